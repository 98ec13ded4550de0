// TF-IDF fitting/transformation, max-abs scaling of the metric columns,
// and feature assembly for the four variants.
#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vultriage/lexer.hpp"
#include "vultriage/metrics.hpp"

namespace vultriage {

struct VectorizeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Sorted sparse vector; strictly increasing indices, no stored zeros.
struct SparseVector {
  std::size_t dim = 0;
  std::vector<std::pair<std::size_t, double>> entries;

  bool operator==(const SparseVector&) const = default;
};

struct TfidfModel {
  // Term -> column index; indices follow lexicographic (byte-wise) term
  // order for cross-run determinism.
  std::map<std::string, std::size_t> vocabulary;
  std::vector<double> idf;  // idf[t] = ln((1+N)/(1+df[t])) + 1
  int n_min = 1;
  int n_max = 1;
  std::size_t min_df = 1;
};

// Fits document frequencies over n-gram features and drops terms with
// df < min_df. An empty surviving vocabulary signals a degenerate corpus.
TfidfModel fit_tfidf(const std::vector<TokenStream>& docs, int n_min, int n_max,
                     std::size_t min_df);

// Raw in-document term counts times idf, L2-normalized. All-zero vectors
// stay zero; out-of-vocabulary terms are ignored.
SparseVector transform_tfidf(const TfidfModel& model, const TokenStream& doc);

struct MaxAbsScale {
  std::array<double, 5> factors{1, 1, 1, 1, 1};
};

// Per-column max absolute value over the fitting rows; all-zero columns
// pass through with factor 1.
MaxAbsScale fit_maxabs(const std::vector<MetricVector>& rows);

// Elementwise division by the factors. No clamping: test rows may exceed
// magnitude 1.
std::array<double, 5> apply_maxabs(const MaxAbsScale& scale, const MetricVector& row);

enum class Variant { Metrics, TokU, TokUB, Mix };

const char* variant_name(Variant v);
Variant variant_from_name(const std::string& name);

// metrics -> the 5 scaled metrics; tok-u / tok-ub -> the TF-IDF vector
// alone; mix -> TF-IDF block first, then the 5 metric columns.
SparseVector assemble_features(Variant variant,
                               const std::optional<SparseVector>& tfidf_vec,
                               const std::optional<std::array<double, 5>>& scaled_metrics);

}  // namespace vultriage
