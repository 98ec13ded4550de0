// Ranking and thresholded evaluation metrics. All tie-breaks are by
// ascending record id for bit-reproducible reports.
#pragma once

#include <stdexcept>
#include <vector>

namespace vultriage {

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ScoredSet {
  std::vector<int> labels;
  std::vector<double> scores;
  std::vector<int> ids;
};

// Step-wise average precision: sum of (delta recall) * precision over the
// descending-score ranking. Not trapezoidal curve integration.
double average_precision(const ScoredSet& s);

// Mann-Whitney U with average-rank tie correction: the probability that a
// random positive outranks a random negative, ties counting one half.
double roc_auc(const ScoredSet& s);

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Positive iff score >= threshold; zero-denominator cases yield zero.
Prf thresholded_prf(const ScoredSet& s, double threshold = 0.5);

// Recall among the k = max(1, floor(fraction * n)) highest-scoring items.
double recall_at_fraction(const ScoredSet& s, double fraction = 0.10);

}  // namespace vultriage
