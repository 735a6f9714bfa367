#pragma once

#include "lcsl/gp.hpp"
#include "lcsl/rng.hpp"

namespace lcsl {

enum class DosePolicy {
  Uniform,          // doses uniform over the dose interval
  TruncatedNormal,  // doses ~ N(optimal dose, 0.5^2) truncated to the interval
};

/// Table-driven definition of one simulation scenario: covariate dimension,
/// admissible dose interval, covariate sampling interval, reward noise sd,
/// and the dose-assignment policy used when generating data.
struct ScenarioSpec {
  int id{1};
  Index p{1};
  Interval dose_range{0.0, 1.0};
  Interval covariate_range{0.0, 1.0};
  double noise_sd{0.1};
  DosePolicy policy{DosePolicy::Uniform};
};

/// The five built-in scenarios; throws DomainError for any other id.
const ScenarioSpec& scenario_spec(int id);

/// Dose maximizing the true expected reward for the given covariates.
double optimal_dose(const ScenarioSpec& spec, const Eigen::Ref<const Vector>& c);

/// True expected reward at (covariates, dose).
double true_q(const ScenarioSpec& spec, const Eigen::Ref<const Vector>& c,
              double a);

/// n x p covariate matrix, entries i.i.d. uniform over covariate_range,
/// drawn row by row.
Matrix sample_covariates(const ScenarioSpec& spec, Index n, CounterRng& rng);

/// Full training draw. Per record: p covariate uniforms, then the dose
/// (one uniform, or truncated-normal draws for the observational policy),
/// then the reward true_q + noise_sd * normal.
Dataset sample_dataset(const ScenarioSpec& spec, Index n, CounterRng& rng);

}  // namespace lcsl
