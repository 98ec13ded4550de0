#include "vultriage/model.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

namespace vultriage {

namespace {

// ln(1 + exp(z)) without overflow.
inline double softplus(double z) {
  if (z > 0) return z + std::log1p(std::exp(-z));
  return std::log1p(std::exp(z));
}

inline double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

inline double inf_norm(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Convenience wrapper over logreg_objective with v = (w_0..w_{d-1}, b).
struct Problem {
  const std::vector<SparseVector>& X;
  const std::vector<int>& y;
  double C;
  ClassWeights cw;
  std::size_t dim;  // feature dimension, v has dim + 1 entries

  double eval(const std::vector<double>& v, std::vector<double>& grad) const {
    const std::vector<double> w(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(dim));
    return logreg_objective(X, y, C, cw, w, v[dim], &grad);
  }
};

}  // namespace

double logreg_objective(const std::vector<SparseVector>& X, const std::vector<int>& y,
                        double C, ClassWeights class_weights,
                        const std::vector<double>& weights, double bias,
                        std::vector<double>* grad) {
  const std::size_t dim = weights.size();
  double f = 0.5 * bias * bias;
  if (grad) {
    grad->assign(dim + 1, 0.0);
    (*grad)[dim] = bias;
  }
  for (std::size_t j = 0; j < dim; ++j) {
    f += 0.5 * weights[j] * weights[j];
    if (grad) (*grad)[j] = weights[j];
  }
  for (std::size_t i = 0; i < X.size(); ++i) {
    double margin = bias;
    for (const auto& [index, value] : X[i].entries) margin += weights[index] * value;
    const double t = y[i] == 1 ? 1.0 : -1.0;
    const double weight = y[i] == 1 ? class_weights.w_pos : class_weights.w_neg;
    const double z = -t * margin;
    f += C * weight * softplus(z);
    if (grad) {
      const double coef = C * weight * sigmoid(z) * (-t);
      for (const auto& [index, value] : X[i].entries) (*grad)[index] += coef * value;
      (*grad)[dim] += coef;
    }
  }
  return f;
}

ClassWeights compute_class_weights(const std::vector<int>& labels) {
  std::size_t n_pos = 0;
  for (int l : labels) n_pos += (l == 1);
  const std::size_t n_neg = labels.size() - n_pos;
  if (n_pos == 0 || n_neg == 0) {
    throw ModelError("class weights need both classes present");
  }
  const double n = static_cast<double>(labels.size());
  return {n / (2.0 * static_cast<double>(n_neg)), n / (2.0 * static_cast<double>(n_pos))};
}

TrainedModel train_logreg(const std::vector<SparseVector>& X, const std::vector<int>& y,
                          double C, ClassWeights class_weights, double tol, int max_iter,
                          std::uint64_t seed) {
  if (X.size() != y.size()) throw ModelError("train_logreg: X and y size mismatch");
  if (X.empty()) throw ModelError("train_logreg: empty training set");
  const std::size_t dim = X[0].dim;
  for (const auto& x : X) {
    if (x.dim != dim) throw ModelError("train_logreg: inconsistent feature dimensions");
    for (const auto& [index, value] : x.entries) {
      if (!std::isfinite(value)) throw ModelError("train_logreg: non-finite feature value");
    }
  }
  bool has_pos = false, has_neg = false;
  for (int l : y) (l == 1 ? has_pos : has_neg) = true;
  if (!has_pos || !has_neg) throw ModelError("train_logreg: both classes required");

  Problem prob{X, y, C, class_weights, dim};
  std::vector<double> v(dim + 1, 0.0);
  std::vector<double> grad, new_grad;
  double f = prob.eval(v, grad);
  const double g0_inf = inf_norm(grad);

  // L-BFGS with Armijo backtracking; no randomness, so runs are
  // bit-reproducible for fixed inputs.
  constexpr std::size_t kHistory = 10;
  std::deque<std::vector<double>> s_hist, y_hist;
  std::deque<double> rho_hist;
  std::vector<double> direction(v.size());
  std::vector<double> trial(v.size());

  int iter = 0;
  double g_inf = g0_inf;
  bool converged = g0_inf == 0.0;
  while (!converged && iter < max_iter) {
    // two-loop recursion
    direction = grad;
    std::vector<double> alpha(s_hist.size());
    for (std::size_t k = s_hist.size(); k-- > 0;) {
      alpha[k] = rho_hist[k] *
                 std::inner_product(s_hist[k].begin(), s_hist[k].end(), direction.begin(), 0.0);
      for (std::size_t j = 0; j < direction.size(); ++j) direction[j] -= alpha[k] * y_hist[k][j];
    }
    if (!s_hist.empty()) {
      const auto& sk = s_hist.back();
      const auto& yk = y_hist.back();
      const double yy = std::inner_product(yk.begin(), yk.end(), yk.begin(), 0.0);
      const double sy = std::inner_product(sk.begin(), sk.end(), yk.begin(), 0.0);
      if (yy > 0) {
        const double gamma = sy / yy;
        for (auto& dj : direction) dj *= gamma;
      }
    }
    for (std::size_t k = 0; k < s_hist.size(); ++k) {
      const double beta = rho_hist[k] * std::inner_product(y_hist[k].begin(), y_hist[k].end(),
                                                           direction.begin(), 0.0);
      for (std::size_t j = 0; j < direction.size(); ++j) {
        direction[j] += (alpha[k] - beta) * s_hist[k][j];
      }
    }
    for (auto& dj : direction) dj = -dj;

    double gd = std::inner_product(grad.begin(), grad.end(), direction.begin(), 0.0);
    if (!(gd < 0)) {
      // fall back to steepest descent when curvature info is unusable
      for (std::size_t j = 0; j < v.size(); ++j) direction[j] = -grad[j];
      gd = -std::inner_product(grad.begin(), grad.end(), grad.begin(), 0.0);
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
    }

    double step = iter == 0 ? std::min(1.0, 1.0 / std::max(1.0, g_inf)) : 1.0;
    constexpr double kArmijo = 1e-4;
    double new_f = f;
    bool accepted = false;
    for (int half = 0; half < 60; ++half) {
      for (std::size_t j = 0; j < v.size(); ++j) trial[j] = v[j] + step * direction[j];
      new_f = prob.eval(trial, new_grad);
      if (!std::isfinite(new_f)) throw ModelError("train_logreg: objective diverged");
      if (new_f <= f + kArmijo * step * gd) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // line search stalled at numerical precision

    std::vector<double> sk(v.size()), yk(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
      sk[j] = trial[j] - v[j];
      yk[j] = new_grad[j] - grad[j];
    }
    const double sy = std::inner_product(sk.begin(), sk.end(), yk.begin(), 0.0);
    if (sy > 1e-12) {
      if (s_hist.size() == kHistory) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
      s_hist.push_back(std::move(sk));
      y_hist.push_back(std::move(yk));
      rho_hist.push_back(1.0 / sy);
    }
    v = trial;
    f = new_f;
    grad = new_grad;
    g_inf = inf_norm(grad);
    ++iter;
    converged = g_inf <= tol * g0_inf;
  }

  TrainedModel model;
  model.weights.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(dim));
  model.bias = v[dim];
  model.C = C;
  model.class_weights = class_weights;
  model.tol = tol;
  model.max_iter = max_iter;
  model.seed = seed;
  model.iterations = iter;
  model.initial_grad_inf = g0_inf;
  model.final_grad_inf = g_inf;
  model.converged = converged;
  return model;
}

double decision_value(const TrainedModel& model, const SparseVector& x) {
  double margin = model.bias;
  for (const auto& [index, value] : x.entries) margin += model.weights[index] * value;
  return margin;
}

double predict_proba(const TrainedModel& model, const SparseVector& x) {
  return sigmoid(decision_value(model, x));
}

}  // namespace vultriage
