// Test-only oracles, independent of the library code paths they check.
#pragma once

#include <cmath>

#include "lcsl/gp.hpp"
#include "lcsl/rng.hpp"
#include "lcsl/types.hpp"

namespace lcsl::testing {

/// Quantile by bisection on the erfc-based CDF. Queries above 1/2 are
/// mirrored into the lower tail, where the CDF is absolutely accurate.
inline double bisect_icdf(double p) {
  if (p == 0.5) return 0.0;
  if (p > 0.5) return -bisect_icdf(1.0 - p);
  double lo = -42.0, hi = 0.0;
  for (int i = 0; i < 220; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double cdf = 0.5 * std::erfc(-mid / std::sqrt(2.0));
    if (cdf < p) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

/// Posterior mean/variance through an explicit dense inverse of
/// K + sigma_n2 I, evaluated entry by entry from kernel_eval.
inline Posterior dense_inverse_predict(const Matrix& X, const Vector& y,
                                       const Hyperparameters& hp,
                                       const Vector& x_star) {
  const Index n = X.rows();
  Matrix A(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      A(i, j) = kernel_eval(X.row(i).transpose(), X.row(j).transpose(), hp,
                            i == j);
    }
  }
  const Matrix A_inv = A.inverse();
  Vector k_star(n);
  for (Index i = 0; i < n; ++i) {
    k_star[i] = kernel_eval(x_star, X.row(i).transpose(), hp, false);
  }
  Posterior post;
  post.mean = k_star.dot(A_inv * y);
  post.variance = hp.sigma_f2 - k_star.dot(A_inv * k_star);
  return post;
}

/// Central finite differences of the log marginal likelihood in
/// log-hyperparameter space.
inline Vector fd_log_ml_gradient(const Matrix& X, const Vector& y,
                                 const Hyperparameters& hp, double h = 1e-5) {
  const Index d = hp.dims();
  Vector z(d + 2);
  z[0] = std::log(hp.sigma_f2);
  for (Index i = 0; i < d; ++i) z[i + 1] = std::log(hp.theta[i]);
  z[d + 1] = std::log(hp.sigma_n2);

  const auto value_at = [&](const Vector& zz) {
    Hyperparameters h2;
    h2.sigma_f2 = std::exp(zz[0]);
    h2.theta = zz.segment(1, d).array().exp();
    h2.sigma_n2 = std::exp(zz[d + 1]);
    return log_marginal_likelihood(X, y, h2);
  };

  Vector grad(d + 2);
  for (Index i = 0; i < d + 2; ++i) {
    Vector zp = z, zm = z;
    zp[i] += h;
    zm[i] -= h;
    grad[i] = (value_at(zp) - value_at(zm)) / (2.0 * h);
  }
  return grad;
}

/// Random dataset with inputs in [0,1]^p, doses in the range, rewards in
/// [-1, 2]; well-scaled for conditioning.
inline Dataset random_dataset(Index n, Index p, CounterRng& rng,
                              Interval dose_range = {0.0, 1.0}) {
  Dataset data;
  data.covariates.resize(n, p);
  data.doses.resize(n);
  data.rewards.resize(n);
  data.dose_range = dose_range;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < p; ++j) data.covariates(i, j) = rng.uniform();
    data.doses[i] = rng.uniform(dose_range.lo, dose_range.hi);
    data.rewards[i] = rng.uniform(-1.0, 2.0);
  }
  return data;
}

/// Moderately scaled random hyperparameters (numerically benign ranges).
inline Hyperparameters random_hyperparameters(Index d, CounterRng& rng) {
  Hyperparameters hp;
  hp.sigma_f2 = std::exp(rng.uniform(-1.0, 1.0));
  hp.theta.resize(d);
  for (Index i = 0; i < d; ++i) hp.theta[i] = std::exp(rng.uniform(-3.0, 1.5));
  hp.sigma_n2 = std::exp(rng.uniform(-7.0, 0.0));
  return hp;
}

}  // namespace lcsl::testing
