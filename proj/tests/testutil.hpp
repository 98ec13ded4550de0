// Shared test helpers: a small C-like snippet generator and independent
// brute-force oracles for the lexer, metrics, TF-IDF, and ranking
// metrics. Everything here deliberately avoids the library's own code
// paths (std::regex lexing, dense math, O(n^2) ranking) so it can serve
// as a second opinion.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "vultriage/eval.hpp"
#include "vultriage/vectorize.hpp"

namespace testutil {

// ---------------------------------------------------------------------
// snippet generator
// ---------------------------------------------------------------------

struct SnippetOptions {
  bool with_comments = true;
  bool with_strings = true;
  int max_statements = 8;
  int max_depth = 3;
};

class SnippetGen {
 public:
  explicit SnippetGen(std::uint64_t seed) : rng_(seed) {}

  std::string identifier() {
    static const char* names[] = {"foo", "Bar", "count", "idx", "buf",   "len",
                                  "ptr", "tmp", "Value", "x",   "state", "n1"};
    std::string base = names[pick(0, 11)];
    if (chance(0.2)) base += std::to_string(pick(0, 9));
    return base;
  }

  std::string number() {
    switch (pick(0, 3)) {
      case 0: return std::to_string(pick(0, 9999));
      case 1: return "0x" + std::to_string(pick(0, 99)) + "F";
      case 2: return std::to_string(pick(1, 99)) + "UL";
      default: return std::to_string(pick(0, 9)) + "." + std::to_string(pick(0, 99));
    }
  }

  std::string string_literal() {
    static const char* bodies[] = {"hello",  "//not a comment", "/*nope*/", "{{{",
                                   "a\\\"b", "fmt %d",          "",         "\\n"};
    return std::string("\"") + bodies[pick(0, 7)] + "\"";
  }

  std::string expression() {
    static const char* ops[] = {"+", "-", "*", "&&", "||", "==", "!=", "<=", ">=", "<<", ">>"};
    std::string e = chance(0.5) ? identifier() : number();
    const int terms = pick(0, 2);
    for (int i = 0; i < terms; ++i) {
      e += " ";
      e += ops[pick(0, 10)];
      e += " ";
      e += chance(0.5) ? identifier() : number();
    }
    return e;
  }

  std::string comment() {
    static const char* texts[] = {"fix this", "see bug 123", "x > y ???", "{ unbalanced",
                                  "trailing */ star"};
    const std::string text = texts[pick(0, 4)];
    if (chance(0.5)) return "// " + text;
    if (chance(0.3)) return "/* " + text + "\n   second line */";
    return "/* " + text + " */";
  }

  void statement(std::ostringstream& out, int depth, const SnippetOptions& opt) {
    indent(out, depth);
    switch (pick(0, 5)) {
      case 0:
        out << identifier() << " = " << expression() << ";";
        break;
      case 1:
        if (opt.with_strings) {
          out << identifier() << " = " << string_literal() << ";";
        } else {
          out << "return " << expression() << ";";
        }
        break;
      case 2:
        out << "if (" << expression() << ") {\n";
        block(out, depth + 1, opt);
        indent(out, depth);
        out << "}";
        break;
      case 3:
        out << "while (" << expression() << ") {\n";
        block(out, depth + 1, opt);
        indent(out, depth);
        out << "}";
        break;
      case 4:
        out << "for (" << identifier() << " = 0; " << expression() << "; " << identifier()
            << "++) {\n";
        block(out, depth + 1, opt);
        indent(out, depth);
        out << "}";
        break;
      default:
        out << "return " << expression() << ";";
        break;
    }
    if (opt.with_comments && chance(0.25)) out << "  " << comment();
    out << "\n";
    if (chance(0.1)) out << "\n";  // occasional blank line
  }

  void block(std::ostringstream& out, int depth, const SnippetOptions& opt) {
    if (depth > opt.max_depth) {
      indent(out, depth);
      out << "return " << number() << ";\n";
      return;
    }
    const int n = pick(1, std::max(1, opt.max_statements / (depth + 1)));
    for (int i = 0; i < n; ++i) statement(out, depth, opt);
  }

  std::string function(const SnippetOptions& opt = {}) {
    std::ostringstream out;
    const int params = pick(0, 4);
    out << (chance(0.5) ? "int " : "void ") << identifier() << "(";
    if (params == 0) {
      out << (chance(0.5) ? "void" : "");
    } else {
      for (int i = 0; i < params; ++i) {
        if (i) out << ", ";
        out << (chance(0.5) ? "int " : "char *") << identifier();
      }
    }
    out << ") {\n";
    if (opt.with_comments && chance(0.4)) out << "  " << comment() << "\n";
    block(out, 1, opt);
    out << "}\n";
    return out.str();
  }

  std::mt19937_64& rng() { return rng_; }
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool chance(double p) { return std::uniform_real_distribution<double>(0, 1)(rng_) < p; }

 private:
  void indent(std::ostringstream& out, int depth) {
    for (int i = 0; i < depth; ++i) out << "  ";
  }
  std::mt19937_64 rng_;
};

inline void append_json_entry(std::ostringstream& out, std::size_t i, const std::string& project,
                            int label, const std::string& src) {
  out << "{\"project\":\"" << project << "\",\"commit_id\":\"c" << i << "\",\"target\":" << label
      << ",\"func\":\"";
  for (char c : src) {
    switch (c) {
      case '"': out << "\\\""; break;
      case '\\': out << "\\\\"; break;
      case '\n': out << "\\n"; break;
      case '\t': out << "\\t"; break;
      default: out << c;
    }
  }
  out << "\"}";
}

// Writes a JSON-array dataset of generated functions across two projects
// with labels loosely tied to structure (deeper nesting and longer bodies
// skew positive), so a trained model has signal to find.
inline std::string synthetic_corpus_json(std::size_t n, std::uint64_t seed) {
  SnippetGen gen(seed);
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < n; ++i) {
    SnippetOptions opt;
    opt.max_depth = gen.pick(1, 3);
    opt.max_statements = gen.pick(2, 10);
    std::string src = gen.function(opt);
    const bool risky = gen.chance(0.3);
    if (risky) src.insert(src.rfind('}'), "  memcpy(buf, ptr, len);\n");
    const int label = (risky || opt.max_depth >= 3) && gen.chance(0.8) ? 1 : 0;
    const std::string project = i % 2 == 0 ? "alpha" : "beta";
    append_json_entry(out, i, project, label, src);
    if (i + 1 < n) out << ",";
  }
  out << "]";
  return out.str();
}


// ---------------------------------------------------------------------
// lexer / metric oracles
// ---------------------------------------------------------------------

// Regex-driven tokenizer; same token grammar, entirely different engine.
inline std::vector<std::string> oracle_tokenize(const std::string& s) {
  static const std::regex re(
      R"((<<=|>>=|\.\.\.|->|\+\+|--|<<|>>|<=|>=|==|!=|&&|\|\||\+=|-=|\*=|/=|%=|&=|\|=|\^=)|([A-Za-z_][A-Za-z0-9_]*)|([0-9][0-9A-Za-z_.]*)|(\S))");
  std::vector<std::string> out;
  for (auto it = std::sregex_iterator(s.begin(), s.end(), re); it != std::sregex_iterator(); ++it) {
    out.push_back(it->str());
  }
  return out;
}

// Cursor-based comment stripper using find(); structured unlike the
// production state machine.
inline std::string oracle_strip(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  const std::size_t n = s.size();
  auto copy_literal = [&](char quote) {
    out += s[i++];
    while (i < n) {
      if (s[i] == '\\' && i + 1 < n) {
        out += s[i];
        out += s[i + 1];
        i += 2;
        continue;
      }
      const char c = s[i];
      out += c;
      ++i;
      if (c == quote || c == '\n') break;
    }
  };
  while (i < n) {
    if (s.compare(i, 2, "//") == 0) {
      std::size_t end = s.find('\n', i);
      if (end == std::string::npos) end = n;
      out.append(end - i, ' ');
      i = end;
    } else if (s.compare(i, 2, "/*") == 0) {
      std::size_t end = s.find("*/", i + 2);
      const std::size_t stop = end == std::string::npos ? n : end + 2;
      for (std::size_t k = i; k < stop; ++k) out += s[k] == '\n' ? '\n' : ' ';
      i = stop;
    } else if (s[i] == '"') {
      copy_literal('"');
    } else if (s[i] == '\'') {
      copy_literal('\'');
    } else {
      out += s[i++];
    }
  }
  return out;
}

inline std::size_t oracle_nloc(const std::string& stripped) {
  std::istringstream in(stripped);
  std::string line;
  std::size_t count = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r\v\f") != std::string::npos) ++count;
  }
  return count;
}

inline std::size_t oracle_ccn(const std::string& stripped) {
  const std::set<std::string> points = {"if", "for", "while", "case", "&&", "||", "?"};
  std::size_t c = 1;
  for (const auto& t : oracle_tokenize(stripped)) c += points.count(t);
  return c;
}

inline std::size_t oracle_depth(const std::string& stripped) {
  long depth = 0, best = 0;
  bool in_str = false, in_chr = false;
  for (std::size_t i = 0; i < stripped.size(); ++i) {
    const char c = stripped[i];
    if ((in_str || in_chr) && c == '\\') {
      ++i;
      continue;
    }
    if (in_str) {
      if (c == '"' || c == '\n') in_str = false;
    } else if (in_chr) {
      if (c == '\'' || c == '\n') in_chr = false;
    } else if (c == '"') {
      in_str = true;
    } else if (c == '\'') {
      in_chr = true;
    } else if (c == '{') {
      best = std::max(best, ++depth);
    } else if (c == '}') {
      depth = std::max(0L, depth - 1);
    }
  }
  return static_cast<std::size_t>(best);
}

inline std::size_t oracle_params(const std::string& stripped) {
  // work on a literal-blanked copy so quotes cannot confuse the scan
  std::string flat = stripped;
  {
    bool in_str = false, in_chr = false;
    for (std::size_t i = 0; i < flat.size(); ++i) {
      char& c = flat[i];
      if ((in_str || in_chr) && c == '\\') {
        c = ' ';
        if (i + 1 < flat.size()) flat[i + 1] = ' ';
        ++i;
        continue;
      }
      if (in_str) {
        if (c == '"' || c == '\n') in_str = false;
        if (c != '\n') c = ' ';
      } else if (in_chr) {
        if (c == '\'' || c == '\n') in_chr = false;
        if (c != '\n') c = ' ';
      } else if (c == '"') {
        in_str = true;
        c = ' ';
      } else if (c == '\'') {
        in_chr = true;
        c = ' ';
      }
    }
  }
  const std::size_t open = flat.find('(');
  if (open == std::string::npos) return 0;
  long level = 1;
  std::size_t commas = 0;
  std::string content;
  std::size_t i = open + 1;
  for (; i < flat.size() && level > 0; ++i) {
    const char c = flat[i];
    if (c == '(') ++level;
    else if (c == ')') --level;
    else if (level == 1) {
      if (c == ',') ++commas;
      else content += c;
    }
  }
  const auto b = content.find_first_not_of(" \t\n\r\v\f");
  const auto e = content.find_last_not_of(" \t\n\r\v\f");
  const std::string trimmed = b == std::string::npos ? "" : content.substr(b, e - b + 1);
  if (commas == 0 && (trimmed.empty() || trimmed == "void")) return 0;
  return commas + 1;
}

// ---------------------------------------------------------------------
// dense TF-IDF oracle
// ---------------------------------------------------------------------

struct DenseTfidf {
  std::vector<std::string> terms;               // sorted
  std::vector<std::vector<double>> rows;        // one dense row per doc
};

inline std::vector<std::string> oracle_ngrams(const std::vector<std::string>& tokens, int n_min,
                                              int n_max) {
  std::vector<std::string> out;
  for (int n = n_min; n <= n_max; ++n) {
    for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= tokens.size(); ++i) {
      std::string t;
      for (int k = 0; k < n; ++k) {
        if (k) t += ' ';
        t += tokens[i + static_cast<std::size_t>(k)];
      }
      out.push_back(t);
    }
  }
  return out;
}

inline DenseTfidf oracle_tfidf(const std::vector<std::vector<std::string>>& docs, int n_min,
                               int n_max, std::size_t min_df) {
  DenseTfidf result;
  std::map<std::string, std::size_t> df;
  std::vector<std::map<std::string, double>> counts(docs.size());
  for (std::size_t d = 0; d < docs.size(); ++d) {
    for (const auto& t : oracle_ngrams(docs[d], n_min, n_max)) counts[d][t] += 1.0;
    for (const auto& [t, c] : counts[d]) ++df[t];
  }
  for (const auto& [t, c] : df) {
    if (c >= min_df) result.terms.push_back(t);
  }
  std::sort(result.terms.begin(), result.terms.end());
  const double n_docs = static_cast<double>(docs.size());
  std::vector<double> idf;
  for (const auto& t : result.terms) {
    idf.push_back(std::log((1.0 + n_docs) / (1.0 + static_cast<double>(df[t]))) + 1.0);
  }
  for (std::size_t d = 0; d < docs.size(); ++d) {
    std::vector<double> row(result.terms.size(), 0.0);
    for (std::size_t j = 0; j < result.terms.size(); ++j) {
      auto it = counts[d].find(result.terms[j]);
      if (it != counts[d].end()) row[j] = it->second * idf[j];
    }
    double norm = 0;
    for (double v : row) norm += v * v;
    if (norm > 0) {
      norm = std::sqrt(norm);
      for (double& v : row) v /= norm;
    }
    result.rows.push_back(std::move(row));
  }
  return result;
}

// ---------------------------------------------------------------------
// ranking metric oracles (quadratic-time, selection-based)
// ---------------------------------------------------------------------

// Items in rank order via repeated extraction of the current best.
inline std::vector<std::size_t> oracle_rank(const vultriage::ScoredSet& s) {
  std::vector<std::size_t> remaining(s.labels.size());
  for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = i;
  std::vector<std::size_t> order;
  while (!remaining.empty()) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < remaining.size(); ++k) {
      const std::size_t a = remaining[k], b = remaining[best];
      if (s.scores[a] > s.scores[b] ||
          (s.scores[a] == s.scores[b] && s.ids[a] < s.ids[b])) {
        best = k;
      }
    }
    order.push_back(remaining[best]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return order;
}

inline double oracle_average_precision(const vultriage::ScoredSet& s) {
  const auto order = oracle_rank(s);
  std::size_t n_pos = 0;
  for (int l : s.labels) n_pos += (l == 1);
  double ap = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (s.labels[order[k]] != 1) continue;
    std::size_t hits = 0;
    for (std::size_t j = 0; j <= k; ++j) hits += (s.labels[order[j]] == 1);
    ap += static_cast<double>(hits) / static_cast<double>(k + 1);
  }
  return ap / static_cast<double>(n_pos);
}

inline double oracle_recall_at_fraction(const vultriage::ScoredSet& s, double fraction) {
  const auto order = oracle_rank(s);
  const std::size_t n = s.labels.size();
  std::size_t k = static_cast<std::size_t>(fraction * static_cast<double>(n));
  if (k < 1) k = 1;
  std::size_t n_pos = 0, hits = 0;
  for (int l : s.labels) n_pos += (l == 1);
  for (std::size_t j = 0; j < k && j < n; ++j) hits += (s.labels[order[j]] == 1);
  return static_cast<double>(hits) / static_cast<double>(n_pos);
}

inline double oracle_roc_auc(const vultriage::ScoredSet& s) {
  double wins = 0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < s.labels.size(); ++i) {
    if (s.labels[i] != 1) continue;
    for (std::size_t j = 0; j < s.labels.size(); ++j) {
      if (s.labels[j] != 0) continue;
      ++pairs;
      if (s.scores[i] > s.scores[j]) wins += 1.0;
      else if (s.scores[i] == s.scores[j]) wins += 0.5;
    }
  }
  return wins / static_cast<double>(pairs);
}

}  // namespace testutil
