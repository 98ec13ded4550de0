#include "vultriage/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace vultriage {

namespace {

// Indices sorted by score descending, ties by ascending id.
std::vector<std::size_t> ranked_order(const ScoredSet& s) {
  std::vector<std::size_t> order(s.labels.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (s.scores[a] != s.scores[b]) return s.scores[a] > s.scores[b];
    return s.ids[a] < s.ids[b];
  });
  return order;
}

void check_sizes(const ScoredSet& s) {
  if (s.labels.size() != s.scores.size() || s.labels.size() != s.ids.size()) {
    throw EvalError("ScoredSet lists must have equal lengths");
  }
}

std::size_t count_positives(const ScoredSet& s) {
  std::size_t n = 0;
  for (int l : s.labels) n += (l == 1);
  return n;
}

}  // namespace

double average_precision(const ScoredSet& s) {
  check_sizes(s);
  const std::size_t n_pos = count_positives(s);
  if (n_pos == 0) throw EvalError("average_precision needs at least one positive");
  const auto order = ranked_order(s);
  double ap = 0;
  std::size_t tp = 0;
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    if (s.labels[order[rank]] == 1) {
      ++tp;
      const double precision = static_cast<double>(tp) / static_cast<double>(rank + 1);
      ap += precision / static_cast<double>(n_pos);  // delta recall is 1/n_pos
    }
  }
  return ap;
}

double roc_auc(const ScoredSet& s) {
  check_sizes(s);
  const std::size_t n_pos = count_positives(s);
  const std::size_t n_neg = s.labels.size() - n_pos;
  if (n_pos == 0 || n_neg == 0) throw EvalError("roc_auc needs both classes");

  // average ranks over tie groups (rank 1 = lowest score)
  std::vector<std::size_t> order(s.labels.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return s.scores[a] < s.scores[b]; });
  double pos_rank_sum = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && s.scores[order[j]] == s.scores[order[i]]) ++j;
    const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) {
      if (s.labels[order[k]] == 1) pos_rank_sum += avg_rank;
    }
    i = j;
  }
  const double np = static_cast<double>(n_pos);
  const double u = pos_rank_sum - np * (np + 1.0) / 2.0;
  return u / (np * static_cast<double>(n_neg));
}

Prf thresholded_prf(const ScoredSet& s, double threshold) {
  check_sizes(s);
  std::size_t tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < s.labels.size(); ++i) {
    const bool predicted = s.scores[i] >= threshold;
    if (predicted && s.labels[i] == 1) ++tp;
    if (predicted && s.labels[i] == 0) ++fp;
    if (!predicted && s.labels[i] == 1) ++fn;
  }
  Prf out;
  out.precision = (tp + fp) > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
  out.recall = (tp + fn) > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
  out.f1 = (out.precision + out.recall) > 0
               ? 2.0 * out.precision * out.recall / (out.precision + out.recall)
               : 0.0;
  return out;
}

double recall_at_fraction(const ScoredSet& s, double fraction) {
  check_sizes(s);
  if (!(fraction > 0.0 && fraction <= 1.0)) throw EvalError("fraction must be in (0,1]");
  const std::size_t n_pos = count_positives(s);
  if (n_pos == 0) throw EvalError("recall_at_fraction needs at least one positive");
  const std::size_t n = s.labels.size();
  const std::size_t k =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n))));
  const auto order = ranked_order(s);
  std::size_t hits = 0;
  for (std::size_t rank = 0; rank < k && rank < n; ++rank) {
    hits += (s.labels[order[rank]] == 1);
  }
  return static_cast<double>(hits) / static_cast<double>(n_pos);
}

}  // namespace vultriage
