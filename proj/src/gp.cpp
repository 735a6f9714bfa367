#include "lcsl/gp.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "lcsl/lbfgs.hpp"

namespace lcsl {
namespace {

constexpr double kLogBoundLo = -13.815510557964274;   // log(1e-6)
constexpr double kLogBoundHi = 13.815510557964274;    // log(1e6)
// Targets are min-max scaled to [0, 1], so their variance is at most 1/4;
// a prior variance of 10 is already 40x that. Wider variance bounds let the
// evidence maximization drift toward the improper-prior limit (sigma_f2 at
// whatever ceiling exists, giant length-scales), where the mean fit stays
// fine but the posterior sd surface inflates near the input boundary and the
// lower-confidence dose rule inherits that distortion.
constexpr double kLogVarBoundHi = 2.302585092994046;  // log(10)
constexpr double kLogInitLo = -4.605170185988091;     // log(1e-2)
constexpr double kLogInitHi = 4.605170185988091;      // log(1e2)

struct Factorization {
  Eigen::LLT<Matrix> llt;
  double jitter{0.0};
};

// Escalating-jitter Cholesky: plain attempt first, then eps * mean(diag)
// for eps = 1e-10 .. 1e-6 in decade steps.
Factorization factorize_with_jitter(const Matrix& A) {
  Factorization fac;
  fac.llt.compute(A);
  if (fac.llt.info() == Eigen::Success) return fac;

  const double mean_diag = A.diagonal().mean();
  double eps = 1e-10;
  for (; eps <= 1.0000001e-6; eps *= 10.0) {
    Matrix jittered = A;
    jittered.diagonal().array() += eps * mean_diag;
    fac.llt.compute(jittered);
    if (fac.llt.info() == Eigen::Success) {
      fac.jitter = eps * mean_diag;
      return fac;
    }
  }
  throw ConditioningError(
      "Cholesky factorization failed at maximum jitter 1e-6 * mean(diag)",
      1e-6 * mean_diag);
}

Vector pack_log(const Hyperparameters& hp) {
  Vector z(hp.dims() + 2);
  z[0] = std::log(hp.sigma_f2);
  for (Index i = 0; i < hp.dims(); ++i) z[i + 1] = std::log(hp.theta[i]);
  z[z.size() - 1] = std::log(std::max(hp.sigma_n2, 1e-300));
  return z;
}

Hyperparameters unpack_log(const Vector& z) {
  Hyperparameters hp;
  hp.sigma_f2 = std::exp(z[0]);
  hp.theta = z.segment(1, z.size() - 2).array().exp();
  hp.sigma_n2 = std::exp(z[z.size() - 1]);
  return hp;
}

double log_ml_from_factorization(const Factorization& fac, const Vector& y,
                                 const Vector& weights) {
  const auto n = static_cast<double>(y.size());
  const double log_det =
      2.0 * fac.llt.matrixLLT().diagonal().array().log().sum();
  return -0.5 * y.dot(weights) - 0.5 * log_det -
         0.5 * n * std::log(2.0 * std::numbers::pi);
}

}  // namespace

void validate(const Dataset& data) {
  const Index n = data.covariates.rows();
  if (n < 1) throw ShapeError("Dataset: need at least one record");
  if (data.doses.size() != n || data.rewards.size() != n) {
    throw ShapeError("Dataset: covariates, doses and rewards disagree on n");
  }
  if (!data.covariates.allFinite() || !data.doses.allFinite() ||
      !data.rewards.allFinite()) {
    throw DomainError("Dataset: all entries must be finite");
  }
  if (!(data.dose_range.lo < data.dose_range.hi)) {
    throw DomainError("Dataset: dose_range must have lo < hi");
  }
  for (Index i = 0; i < n; ++i) {
    if (!data.dose_range.contains(data.doses[i])) {
      throw DomainError("Dataset: dose at record " + std::to_string(i) +
                        " lies outside dose_range");
    }
  }
}

Matrix design_inputs(const Dataset& data) {
  Matrix X(data.n(), data.p() + 1);
  X.leftCols(data.p()) = data.covariates;
  X.col(data.p()) = data.doses;
  return X;
}

RewardScaler RewardScaler::fit(const Vector& rewards) {
  return {rewards.minCoeff(), rewards.maxCoeff()};
}

double RewardScaler::scale(double r) const {
  if (r_max == r_min) return 0.5;
  return (r - r_min) / (r_max - r_min);
}

Vector RewardScaler::scale(const Vector& r) const {
  Vector out(r.size());
  for (Index i = 0; i < r.size(); ++i) out[i] = scale(r[i]);
  return out;
}

FittedGp fit(const Dataset& data, const Hyperparameters& hp) {
  validate(data);
  validate(hp);
  if (hp.dims() != data.p() + 1) {
    throw ShapeError("fit: theta must have one entry per covariate plus dose");
  }
  const RewardScaler scaler = RewardScaler::fit(data.rewards);
  return fit_scaled(design_inputs(data), scaler.scale(data.rewards), hp, scaler,
                    data.dose_range);
}

FittedGp fit_scaled(Matrix inputs, Vector targets, const Hyperparameters& hp,
                    const RewardScaler& scaler, Interval dose_range) {
  validate(hp);
  if (inputs.cols() != hp.dims()) {
    throw ShapeError("fit_scaled: input dimension does not match theta");
  }
  if (inputs.rows() != targets.size()) {
    throw ShapeError("fit_scaled: inputs and targets disagree on n");
  }

  const Matrix K = gram_matrix(inputs, hp);
  Factorization fac = factorize_with_jitter(K);

  FittedGp model;
  model.hp = hp;
  model.weights = fac.llt.solve(targets);
  model.log_ml = log_ml_from_factorization(fac, targets, model.weights);
  const Matrix inv =
      fac.llt.solve(Matrix::Identity(inputs.rows(), inputs.rows()));
  model.precision = 0.5 * (inv + inv.transpose());
  model.chol = fac.llt.matrixL();
  model.inputs = std::move(inputs);
  model.targets = std::move(targets);
  model.scaler = scaler;
  model.dose_range = dose_range;
  model.jitter = fac.jitter;
  return model;
}

Posterior predict(const FittedGp& model, const Eigen::Ref<const Vector>& x_star) {
  const Vector k_star = cross_covariance(model.inputs, x_star, model.hp);
  Posterior post;
  post.mean = k_star.dot(model.weights);
  const Vector v =
      model.chol.triangularView<Eigen::Lower>().solve(k_star);
  post.variance = std::max(0.0, model.hp.sigma_f2 - v.squaredNorm());
  return post;
}

double log_marginal_likelihood(const Eigen::Ref<const Matrix>& inputs,
                               const Eigen::Ref<const Vector>& targets,
                               const Hyperparameters& hp) {
  const Matrix K = gram_matrix(inputs, hp);
  Factorization fac = factorize_with_jitter(K);
  const Vector weights = fac.llt.solve(targets);
  return log_ml_from_factorization(fac, targets, weights);
}

LogMlResult log_marginal_likelihood_grad(const Eigen::Ref<const Matrix>& inputs,
                                         const Eigen::Ref<const Vector>& targets,
                                         const Hyperparameters& hp) {
  const Index n = inputs.rows();
  const Index d = hp.dims();

  Matrix K = gram_matrix(inputs, hp);          // diag sigma_f2 + sigma_n2
  Factorization fac = factorize_with_jitter(K);
  const Vector alpha = fac.llt.solve(targets);

  LogMlResult res;
  res.value = log_ml_from_factorization(fac, targets, alpha);

  // K without the nugget; the signal part is d A / d log sigma_f2.
  K.diagonal().array() -= hp.sigma_n2;

  const Matrix inv = fac.llt.solve(Matrix::Identity(n, n));
  const double trace_inv = inv.trace();
  // M = alpha alpha' - (K + sigma_n2 I)^-1, symmetrized so the quadratic
  // identity below is exact.
  Matrix M = 0.5 * (inv + inv.transpose());
  M = (alpha * alpha.transpose() - M).eval();

  res.grad.resize(d + 2);
  const Matrix W = M.cwiseProduct(K);
  res.grad[0] = 0.5 * W.sum();

  // For each dimension j:
  //   sum_pq W_pq (x_pj - x_qj)^2 = 2 [ (x.^2)' (W 1) - x' (W x) ],
  // valid because W is symmetric; avoids materializing distance matrices.
  const Vector row_sums = W.rowwise().sum();
  for (Index j = 0; j < d; ++j) {
    const Vector xj = inputs.col(j);
    const Vector wx = W * xj;
    const double quad = xj.array().square().matrix().dot(row_sums) - xj.dot(wx);
    res.grad[j + 1] = 0.5 * quad / hp.theta[j];
  }

  // tr(M) = alpha'alpha - tr((K + sigma_n2 I)^-1)
  res.grad[d + 1] = 0.5 * hp.sigma_n2 * (alpha.squaredNorm() - trace_inv);
  return res;
}

double log_marginal_likelihood(const Dataset& data, const Hyperparameters& hp) {
  validate(data);
  return log_marginal_likelihood(design_inputs(data), data.rewards, hp);
}

LogMlResult log_marginal_likelihood_grad(const Dataset& data,
                                         const Hyperparameters& hp) {
  validate(data);
  return log_marginal_likelihood_grad(design_inputs(data), data.rewards, hp);
}

FittedGp optimize_hyperparameters(const Dataset& data, const OptimizeOptions& opts,
                                  CounterRng rng) {
  validate(data);
  if (opts.restarts < 1) {
    throw DomainError("optimize_hyperparameters: restarts must be >= 1");
  }

  const RewardScaler scaler = RewardScaler::fit(data.rewards);
  const Matrix inputs = design_inputs(data);
  const Vector targets = scaler.scale(data.rewards);
  const Index d = data.p() + 1;
  const Index nparams = d + 2;

  const auto objective = [&](const Vector& z, double& f, Vector* grad) -> bool {
    const Hyperparameters hp = unpack_log(z);
    try {
      if (grad == nullptr) {
        f = -log_marginal_likelihood(inputs, targets, hp);
      } else {
        LogMlResult r = log_marginal_likelihood_grad(inputs, targets, hp);
        f = -r.value;
        *grad = -r.grad;
      }
    } catch (const ConditioningError&) {
      return false;
    }
    return std::isfinite(f);
  };

  const Vector lo = Vector::Constant(nparams, kLogBoundLo);
  Vector hi = Vector::Constant(nparams, kLogBoundHi);
  hi[0] = kLogVarBoundHi;            // sigma_f2
  hi[nparams - 1] = kLogVarBoundHi;  // sigma_n2
  LbfgsOptions lopts;
  lopts.max_iters = opts.max_iters;
  lopts.grad_tol = opts.grad_tol;

  bool have_best = false;
  double best_value = 0.0;
  Vector best_z;
  std::ostringstream failures;

  for (int r = 0; r < opts.restarts; ++r) {
    CounterRng stream = rng.derive(static_cast<std::uint64_t>(r));
    Vector z0(nparams);
    if (r == 0 && opts.init.has_value()) {
      z0 = pack_log(*opts.init);
    } else {
      for (Index i = 0; i < nparams; ++i) {
        z0[i] = stream.uniform(kLogInitLo, kLogInitHi);
      }
    }
    const LbfgsResult res = minimize_box(objective, std::move(z0), lo, hi, lopts);
    if (res.start_failed || !std::isfinite(res.f)) {
      failures << "restart " << r << ": objective not evaluable\n";
      continue;
    }
    const double value = -res.f;
    if (!have_best || value > best_value) {
      have_best = true;
      best_value = value;
      best_z = res.x;
    }
  }

  if (!have_best) {
    throw FitError("optimize_hyperparameters: every restart failed\n" +
                   failures.str());
  }
  return fit_scaled(inputs, targets, unpack_log(best_z), scaler,
                    data.dose_range);
}

FittedGp optimize_hyperparameters(const Dataset& data, int restarts,
                                  CounterRng rng) {
  OptimizeOptions opts;
  opts.restarts = restarts;
  return optimize_hyperparameters(data, opts, rng);
}

}  // namespace lcsl
