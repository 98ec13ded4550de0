// Five cheap per-function code metrics computed with linear scans on
// comment-stripped source. No syntax tree is ever built.
#pragma once

#include <cstddef>
#include <string>

namespace vultriage {

struct MetricVector {
  std::size_t nloc = 0;         // non-blank lines
  std::size_t ccn = 0;          // approximate cyclomatic complexity
  std::size_t token_count = 0;  // lexer token count after comment stripping
  std::size_t max_depth = 0;    // maximum brace nesting
  std::size_t param_count = 0;  // parameters of the first paren group

  bool operator==(const MetricVector&) const = default;
};

// Lines containing at least one non-whitespace character.
std::size_t nloc(const std::string& stripped);

// 1 + occurrences of the lexical decision points if/for/while/case and
// the operator tokens && || ?, counted on the token stream so substrings
// like `iffy` do not match. Tokens inside string literals still count;
// this is a lexical approximation.
std::size_t cyclomatic_approx(const std::string& stripped);

// Token count under the same lexer as the token feature branch, applied
// after comment stripping.
std::size_t token_count(const std::string& stripped);

// Maximum {} nesting in a single scan. Braces inside string and char
// literals are skipped; stray closers clamp depth at zero.
std::size_t max_brace_depth(const std::string& stripped);

// Parameters of the first paren group: top-level commas + 1, with nested
// parens shielded. Empty group or a lone `void` counts as zero; a missing
// closer counts to end of input; no `(` at all gives zero. For a return
// type like `int (*f(void))(int)` the first group is not the signature
// and the count is wrong; Devign records make this rare.
std::size_t param_count(const std::string& stripped);

// strip_comments composed with the five counters above.
MetricVector extract_metrics(const std::string& source);

}  // namespace vultriage
