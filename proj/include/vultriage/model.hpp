// Class-weighted L2-regularized logistic regression trained with a
// deterministic L-BFGS solver.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "vultriage/vectorize.hpp"

namespace vultriage {

struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ClassWeights {
  double w_neg = 1.0;
  double w_pos = 1.0;
};

// Balanced heuristic: w_c = n_total / (2 * n_c). Both classes required.
ClassWeights compute_class_weights(const std::vector<int>& labels);

struct TrainedModel {
  std::vector<double> weights;
  double bias = 0.0;

  // Hyperparameters the model was trained with.
  double C = 1.0;
  ClassWeights class_weights;
  double tol = 1e-4;
  int max_iter = 2000;
  std::uint64_t seed = 42;

  // Solver diagnostics.
  int iterations = 0;
  double initial_grad_inf = 0.0;
  double final_grad_inf = 0.0;
  bool converged = false;
};

// The training objective
//   J(w,b) = 1/2 (||w||^2 + b^2)
//          + C * sum_i w_class(y_i) * ln(1 + exp(-t_i (w.x_i + b)))
// with t_i = 2 y_i - 1. The bias is regularized (appended-constant
// formulation, matching the liblinear-family objective). When `grad` is
// non-null it receives d J / d(w, b), bias slot last.
double logreg_objective(const std::vector<SparseVector>& X, const std::vector<int>& y,
                        double C, ClassWeights class_weights,
                        const std::vector<double>& weights, double bias,
                        std::vector<double>* grad);

// Minimizes J. Stops when the infinity norm of the gradient falls to tol
// times its initial value, or after max_iter iterations. Deterministic:
// the solver consumes no randomness, so `seed` is recorded but unused.
TrainedModel train_logreg(const std::vector<SparseVector>& X, const std::vector<int>& y,
                          double C, ClassWeights class_weights, double tol, int max_iter,
                          std::uint64_t seed);

// Raw margin w.x + b.
double decision_value(const TrainedModel& model, const SparseVector& x);

// sigma(w.x + b).
double predict_proba(const TrainedModel& model, const SparseVector& x);

}  // namespace vultriage
