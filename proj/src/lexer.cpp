#include "vultriage/lexer.hpp"

#include <array>
#include <cctype>
#include <string_view>

namespace vultriage {

namespace {

inline bool is_ident_start(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

inline bool is_ident_char(char c) {
  return is_ident_start(c) || (c >= '0' && c <= '9');
}

inline bool is_digit(char c) { return c >= '0' && c <= '9'; }

inline bool is_number_char(char c) {
  return is_ident_char(c) || c == '.';
}

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

// Frozen so token output is bit-stable; longest entries first for
// maximal munch.
constexpr std::array<std::string_view, 3> kOps3 = {"<<=", ">>=", "..."};
constexpr std::array<std::string_view, 19> kOps2 = {
    "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=", "&&",
    "||", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^="};

}  // namespace

std::string strip_comments(const std::string& source) {
  enum class State { Code, Str, Chr, Line, Block };
  std::string out = source;
  State st = State::Code;
  const std::size_t n = source.size();
  for (std::size_t i = 0; i < n; ++i) {
    const char c = source[i];
    switch (st) {
      case State::Code:
        if (c == '/' && i + 1 < n && source[i + 1] == '/') {
          out[i] = ' ';
          out[i + 1] = ' ';
          ++i;
          st = State::Line;
        } else if (c == '/' && i + 1 < n && source[i + 1] == '*') {
          out[i] = ' ';
          out[i + 1] = ' ';
          ++i;
          st = State::Block;
        } else if (c == '"') {
          st = State::Str;
        } else if (c == '\'') {
          st = State::Chr;
        }
        break;
      case State::Str:
        if (c == '\\' && i + 1 < n) {
          ++i;
        } else if (c == '"' || c == '\n') {
          // an unterminated literal ends at the newline
          st = State::Code;
        }
        break;
      case State::Chr:
        if (c == '\\' && i + 1 < n) {
          ++i;
        } else if (c == '\'' || c == '\n') {
          st = State::Code;
        }
        break;
      case State::Line:
        if (c == '\n') {
          st = State::Code;
        } else {
          out[i] = ' ';
        }
        break;
      case State::Block:
        if (c == '*' && i + 1 < n && source[i + 1] == '/') {
          out[i] = ' ';
          out[i + 1] = ' ';
          ++i;
          st = State::Code;
        } else if (c != '\n') {
          out[i] = ' ';
        }
        break;
    }
  }
  return out;
}

TokenStream tokenize(const std::string& source) {
  TokenStream tokens;
  const std::size_t n = source.size();
  std::size_t i = 0;
  while (i < n) {
    const char c = source[i];
    if (is_space(c)) {
      ++i;
      continue;
    }
    // multi-character operators, longest first
    bool matched = false;
    if (i + 3 <= n) {
      std::string_view v(source.data() + i, 3);
      for (auto op : kOps3) {
        if (v == op) {
          tokens.emplace_back(op);
          i += 3;
          matched = true;
          break;
        }
      }
    }
    if (!matched && i + 2 <= n) {
      std::string_view v(source.data() + i, 2);
      for (auto op : kOps2) {
        if (v == op) {
          tokens.emplace_back(op);
          i += 2;
          matched = true;
          break;
        }
      }
    }
    if (matched) continue;
    if (is_ident_start(c)) {
      std::size_t j = i + 1;
      while (j < n && is_ident_char(source[j])) ++j;
      tokens.emplace_back(source.substr(i, j - i));
      i = j;
    } else if (is_digit(c)) {
      std::size_t j = i + 1;
      while (j < n && is_number_char(source[j])) ++j;
      tokens.emplace_back(source.substr(i, j - i));
      i = j;
    } else {
      tokens.emplace_back(1, c);
      ++i;
    }
  }
  return tokens;
}

std::vector<std::string> ngrams(const TokenStream& tokens, int n_min, int n_max) {
  std::vector<std::string> feats;
  for (int n = n_min; n <= n_max; ++n) {
    if (n < 1 || static_cast<std::size_t>(n) > tokens.size()) continue;
    const std::size_t last = tokens.size() - static_cast<std::size_t>(n);
    for (std::size_t i = 0; i <= last; ++i) {
      std::string f = tokens[i];
      for (int k = 1; k < n; ++k) {
        f += ' ';
        f += tokens[i + static_cast<std::size_t>(k)];
      }
      feats.push_back(std::move(f));
    }
  }
  return feats;
}

std::string rename_identifiers(const std::string& source,
                               const std::unordered_set<std::string>& keywords,
                               const std::string& placeholder) {
  std::string out;
  out.reserve(source.size());
  const std::size_t n = source.size();
  std::size_t i = 0;
  while (i < n) {
    if (is_ident_start(source[i])) {
      std::size_t j = i + 1;
      while (j < n && is_ident_char(source[j])) ++j;
      std::string word = source.substr(i, j - i);
      out += keywords.count(word) ? word : placeholder;
      i = j;
    } else {
      out += source[i];
      ++i;
    }
  }
  return out;
}

const std::unordered_set<std::string>& c_keywords() {
  static const std::unordered_set<std::string> kw = {
      "auto",     "break",  "case",    "char",   "const",    "continue",
      "default",  "do",     "double",  "else",   "enum",     "extern",
      "float",    "for",    "goto",    "if",     "int",      "long",
      "register", "return", "short",   "signed", "sizeof",   "static",
      "struct",   "switch", "typedef", "union",  "unsigned", "void",
      "volatile", "while",  "inline",  "restrict"};
  return kw;
}

}  // namespace vultriage
