#include "vultriage/metrics.hpp"

#include "vultriage/lexer.hpp"

namespace vultriage {

namespace {

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

// Walks `s` calling fn(i, c) only for positions outside string and char
// literals. Backslash escapes honored; an unterminated literal ends at a
// newline.
template <typename Fn>
void scan_outside_literals(const std::string& s, Fn&& fn) {
  enum class State { Code, Str, Chr };
  State st = State::Code;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    switch (st) {
      case State::Code:
        if (c == '"') {
          st = State::Str;
        } else if (c == '\'') {
          st = State::Chr;
        } else {
          fn(i, c);
        }
        break;
      case State::Str:
        if (c == '\\' && i + 1 < s.size()) {
          ++i;
        } else if (c == '"' || c == '\n') {
          st = State::Code;
        }
        break;
      case State::Chr:
        if (c == '\\' && i + 1 < s.size()) {
          ++i;
        } else if (c == '\'' || c == '\n') {
          st = State::Code;
        }
        break;
    }
  }
}

}  // namespace

std::size_t nloc(const std::string& stripped) {
  std::size_t lines = 0;
  bool line_has_content = false;
  for (char c : stripped) {
    if (c == '\n') {
      if (line_has_content) ++lines;
      line_has_content = false;
    } else if (!is_space(c)) {
      line_has_content = true;
    }
  }
  if (line_has_content) ++lines;
  return lines;
}

std::size_t cyclomatic_approx(const std::string& stripped) {
  std::size_t decisions = 0;
  for (const auto& tok : tokenize(stripped)) {
    if (tok == "if" || tok == "for" || tok == "while" || tok == "case" ||
        tok == "&&" || tok == "||" || tok == "?") {
      ++decisions;
    }
  }
  return 1 + decisions;
}

std::size_t token_count(const std::string& stripped) {
  return tokenize(stripped).size();
}

std::size_t max_brace_depth(const std::string& stripped) {
  std::size_t depth = 0;
  std::size_t max_depth = 0;
  scan_outside_literals(stripped, [&](std::size_t, char c) {
    if (c == '{') {
      ++depth;
      if (depth > max_depth) max_depth = depth;
    } else if (c == '}') {
      if (depth > 0) --depth;  // stray closer clamps at 0
    }
  });
  return max_depth;
}

std::size_t param_count(const std::string& stripped) {
  // Slice out the first paren group at nesting level 1 (to end of input
  // when unclosed), then count top-level commas.
  std::ptrdiff_t level = 0;
  bool in_group = false;
  std::size_t commas = 0;
  std::string flat;  // group content at top level, for the void/empty check
  bool done = false;
  scan_outside_literals(stripped, [&](std::size_t, char c) {
    if (done) return;
    if (c == '(') {
      ++level;
      if (level == 1 && !in_group) in_group = true;
      return;
    }
    if (!in_group) return;
    if (c == ')') {
      --level;
      if (level == 0) done = true;
      return;
    }
    if (level == 1) {
      if (c == ',') {
        ++commas;
      } else {
        flat += c;
      }
    }
  });
  if (!in_group) return 0;
  // trim whitespace from the single-segment case
  std::size_t b = 0, e = flat.size();
  while (b < e && is_space(flat[b])) ++b;
  while (e > b && is_space(flat[e - 1])) --e;
  const std::string content = flat.substr(b, e - b);
  if (commas == 0 && (content.empty() || content == "void")) return 0;
  return commas + 1;
}

MetricVector extract_metrics(const std::string& source) {
  const std::string stripped = strip_comments(source);
  MetricVector m;
  m.nloc = nloc(stripped);
  m.ccn = cyclomatic_approx(stripped);
  m.token_count = token_count(stripped);
  m.max_depth = max_brace_depth(stripped);
  m.param_count = param_count(stripped);
  return m;
}

}  // namespace vultriage
