#pragma once

#include <optional>

#include "lcsl/kernel.hpp"
#include "lcsl/rng.hpp"
#include "lcsl/types.hpp"

namespace lcsl {

/// Training records: covariates, administered doses, observed rewards, and
/// the admissible dose interval.
struct Dataset {
  Matrix covariates;  // n x p
  Vector doses;       // n
  Vector rewards;     // n
  Interval dose_range{0.0, 1.0};

  Index n() const { return covariates.rows(); }
  Index p() const { return covariates.cols(); }
};

/// Throws ShapeError / DomainError unless sizes agree, all entries are
/// finite, n >= 1 and every dose lies in dose_range.
void validate(const Dataset& data);

/// n x (p+1) design matrix with rows [covariates, dose]; dose last.
Matrix design_inputs(const Dataset& data);

/// Min-max map of rewards onto [0, 1]. A degenerate range (r_max == r_min)
/// maps everything to 0.5.
struct RewardScaler {
  double r_min{0.0};
  double r_max{1.0};

  static RewardScaler fit(const Vector& rewards);
  double scale(double r) const;
  Vector scale(const Vector& r) const;
  double unscale(double s) const { return r_min + (r_max - r_min) * s; }
  double span() const { return r_max - r_min; }
};

/// Posterior of the latent response at one query point, on the scaled-reward
/// scale. The variance is noise-free (query prior variance sigma_f2) and is
/// clamped at zero.
struct Posterior {
  double mean{0.0};
  double variance{0.0};
};

/// Everything needed for prediction: hyperparameters, training inputs,
/// scaled targets, the lower Cholesky factor L with L L' = K + sigma_n2 I,
/// the weight vector (K + sigma_n2 I)^-1 y, and the cached inverse itself
/// (used by the dose-coefficient expansion).
struct FittedGp {
  Hyperparameters hp;
  Matrix inputs;     // n x d, dose last
  Vector targets;    // scaled rewards
  Matrix chol;       // L, lower triangular
  Vector weights;    // (K + sigma_n2 I)^-1 y
  Matrix precision;  // (K + sigma_n2 I)^-1, symmetrized
  RewardScaler scaler;
  Interval dose_range{0.0, 1.0};
  double log_ml{0.0};
  double jitter{0.0};  // diagonal jitter actually applied, 0 when none

  Index n() const { return inputs.rows(); }
  Index dims() const { return inputs.cols(); }
};

/// Scales rewards to [0, 1] and conditions the GP. Throws ConditioningError
/// when the Gram matrix cannot be factorized even at the maximum jitter.
FittedGp fit(const Dataset& data, const Hyperparameters& hp);

/// Conditions on already-scaled targets; `fit` and model loading share this.
FittedGp fit_scaled(Matrix inputs, Vector targets, const Hyperparameters& hp,
                    const RewardScaler& scaler, Interval dose_range);

/// Posterior mean and latent variance at x_star = [covariates, dose].
Posterior predict(const FittedGp& model, const Eigen::Ref<const Vector>& x_star);

struct LogMlResult {
  double value{0.0};
  Vector grad;  // d/d log sigma_f2, d/d log theta_1..d, d/d log sigma_n2
};

/// Log marginal likelihood of already-scaled targets:
///   -1/2 y'(K+sigma_n2 I)^-1 y - 1/2 log det(K+sigma_n2 I) - n/2 log 2pi.
double log_marginal_likelihood(const Eigen::Ref<const Matrix>& inputs,
                               const Eigen::Ref<const Vector>& targets,
                               const Hyperparameters& hp);

/// Value plus the analytic gradient with respect to the log-hyperparameters.
LogMlResult log_marginal_likelihood_grad(const Eigen::Ref<const Matrix>& inputs,
                                         const Eigen::Ref<const Vector>& targets,
                                         const Hyperparameters& hp);

/// Rewards in `data` are treated as already scaled.
double log_marginal_likelihood(const Dataset& data, const Hyperparameters& hp);
LogMlResult log_marginal_likelihood_grad(const Dataset& data,
                                         const Hyperparameters& hp);

struct OptimizeOptions {
  int restarts{10};
  int max_iters{200};
  double grad_tol{1e-6};
  /// When set, the first restart starts here instead of a random draw.
  std::optional<Hyperparameters> init;
};

/// Type-II maximum likelihood over log-hyperparameters: `restarts`
/// independent projected L-BFGS ascents from log-uniform draws over
/// [1e-2, 1e2]. Box bounds: [1e-6, 1e6] for each length-scale, [1e-6, 10]
/// for the two variances -- targets live in [0, 1] (variance at most 1/4),
/// and wider variance bounds drive the evidence toward the improper-prior
/// limit whose posterior sd surface is unusable. Returns the fit with the
/// highest achieved log marginal likelihood (ties to the lowest restart
/// index); deterministic given the rng seed. Throws FitError when every
/// restart fails.
FittedGp optimize_hyperparameters(const Dataset& data, const OptimizeOptions& opts,
                                  CounterRng rng);
FittedGp optimize_hyperparameters(const Dataset& data, int restarts, CounterRng rng);

}  // namespace lcsl
