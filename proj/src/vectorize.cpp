#include "vultriage/vectorize.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

namespace vultriage {

TfidfModel fit_tfidf(const std::vector<TokenStream>& docs, int n_min, int n_max,
                     std::size_t min_df) {
  if (docs.empty()) throw VectorizeError("fit_tfidf: empty document list");
  if (n_min < 1 || n_min > n_max) throw VectorizeError("fit_tfidf: invalid n-gram range");

  // std::map keeps byte-wise lexicographic term order, which fixes the
  // column indices independent of document order.
  std::map<std::string, std::size_t> df;
  for (const auto& doc : docs) {
    std::unordered_set<std::string> seen;
    for (auto& term : ngrams(doc, n_min, n_max)) {
      seen.insert(std::move(term));
    }
    for (const auto& term : seen) ++df[term];
  }

  TfidfModel model;
  model.n_min = n_min;
  model.n_max = n_max;
  model.min_df = min_df;
  const double n_docs = static_cast<double>(docs.size());
  std::size_t index = 0;
  for (const auto& [term, count] : df) {
    if (count < min_df) continue;
    model.vocabulary.emplace(term, index++);
    model.idf.push_back(std::log((1.0 + n_docs) / (1.0 + static_cast<double>(count))) + 1.0);
  }
  if (model.vocabulary.empty()) {
    throw VectorizeError("fit_tfidf: empty vocabulary after min_df filtering");
  }
  return model;
}

SparseVector transform_tfidf(const TfidfModel& model, const TokenStream& doc) {
  std::unordered_map<std::size_t, double> counts;
  for (const auto& term : ngrams(doc, model.n_min, model.n_max)) {
    auto it = model.vocabulary.find(term);
    if (it != model.vocabulary.end()) counts[it->second] += 1.0;
  }
  SparseVector vec;
  vec.dim = model.vocabulary.size();
  vec.entries.reserve(counts.size());
  double norm_sq = 0;
  for (const auto& [index, count] : counts) {
    const double v = count * model.idf[index];
    vec.entries.emplace_back(index, v);
    norm_sq += v * v;
  }
  std::sort(vec.entries.begin(), vec.entries.end());
  if (norm_sq > 0) {
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (auto& [index, value] : vec.entries) value *= inv;
  }
  return vec;
}

MaxAbsScale fit_maxabs(const std::vector<MetricVector>& rows) {
  if (rows.empty()) throw VectorizeError("fit_maxabs: empty row list");
  std::array<double, 5> max_abs{0, 0, 0, 0, 0};
  for (const auto& r : rows) {
    const std::array<double, 5> vals = {
        static_cast<double>(r.nloc), static_cast<double>(r.ccn),
        static_cast<double>(r.token_count), static_cast<double>(r.max_depth),
        static_cast<double>(r.param_count)};
    for (int i = 0; i < 5; ++i) max_abs[i] = std::max(max_abs[i], std::abs(vals[i]));
  }
  MaxAbsScale scale;
  for (int i = 0; i < 5; ++i) scale.factors[i] = max_abs[i] > 0 ? max_abs[i] : 1.0;
  return scale;
}

std::array<double, 5> apply_maxabs(const MaxAbsScale& scale, const MetricVector& row) {
  const std::array<double, 5> vals = {
      static_cast<double>(row.nloc), static_cast<double>(row.ccn),
      static_cast<double>(row.token_count), static_cast<double>(row.max_depth),
      static_cast<double>(row.param_count)};
  std::array<double, 5> out{};
  for (int i = 0; i < 5; ++i) out[i] = vals[i] / scale.factors[i];
  return out;
}

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::Metrics: return "metrics";
    case Variant::TokU: return "tok-u";
    case Variant::TokUB: return "tok-ub";
    case Variant::Mix: return "mix";
  }
  return "?";
}

Variant variant_from_name(const std::string& name) {
  if (name == "metrics") return Variant::Metrics;
  if (name == "tok-u") return Variant::TokU;
  if (name == "tok-ub") return Variant::TokUB;
  if (name == "mix") return Variant::Mix;
  throw VectorizeError("unknown variant: " + name);
}

SparseVector assemble_features(Variant variant,
                               const std::optional<SparseVector>& tfidf_vec,
                               const std::optional<std::array<double, 5>>& scaled_metrics) {
  auto metrics_entries = [&](SparseVector& vec, std::size_t offset) {
    for (std::size_t i = 0; i < 5; ++i) {
      if ((*scaled_metrics)[i] != 0) vec.entries.emplace_back(offset + i, (*scaled_metrics)[i]);
    }
  };
  switch (variant) {
    case Variant::Metrics: {
      if (!scaled_metrics) throw VectorizeError("metrics variant requires scaled metrics");
      SparseVector vec;
      vec.dim = 5;
      metrics_entries(vec, 0);
      return vec;
    }
    case Variant::TokU:
    case Variant::TokUB: {
      if (!tfidf_vec) throw VectorizeError("token variant requires a TF-IDF vector");
      return *tfidf_vec;
    }
    case Variant::Mix: {
      if (!tfidf_vec || !scaled_metrics) {
        throw VectorizeError("mix variant requires TF-IDF and metrics blocks");
      }
      SparseVector vec = *tfidf_vec;
      metrics_entries(vec, vec.dim);
      vec.dim += 5;
      return vec;
    }
  }
  throw VectorizeError("unreachable variant");
}

}  // namespace vultriage
