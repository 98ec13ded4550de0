// Lexical utilities: comment stripping, tokenization, n-gram formation,
// and the test-only identifier renaming perturbation.
#pragma once

#include <string>
#include <unordered_set>
#include <vector>

namespace vultriage {

// Ordered list of lexemes. Case preserved, no whitespace inside tokens.
using TokenStream = std::vector<std::string>;

// Replaces every character inside a // or /* */ comment with a space,
// except newlines inside block comments, which are kept so line structure
// survives for NLOC. Comment delimiters inside string/char literals are
// left alone (backslash escapes honored). Output length equals input
// length; an unterminated block comment runs to end of input.
std::string strip_comments(const std::string& source);

// Left-to-right maximal munch over four token classes, in priority order:
// multi-character operators from a fixed list, identifiers
// [A-Za-z_][A-Za-z0-9_]*, numbers (digit followed by the maximal run of
// [0-9A-Za-z_.]), then any other single non-whitespace character.
// Comments are NOT removed here; whitespace separates tokens.
TokenStream tokenize(const std::string& source);

// All contiguous n-token windows for each n in [n_min, n_max], tokens
// joined by a single space. Unigrams first, then bigrams, and so on.
std::vector<std::string> ngrams(const TokenStream& tokens, int n_min, int n_max);

// Replaces every maximal identifier-pattern match not in `keywords` with
// `placeholder`. Runs on raw text, so matches inside comments and string
// literals are replaced too.
std::string rename_identifiers(const std::string& source,
                               const std::unordered_set<std::string>& keywords,
                               const std::string& placeholder = "ID");

// The 32 C89 keywords plus C99 `inline` and `restrict`.
const std::unordered_set<std::string>& c_keywords();

}  // namespace vultriage
