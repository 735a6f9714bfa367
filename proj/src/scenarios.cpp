#include "lcsl/scenarios.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "lcsl/stats.hpp"

namespace lcsl {
namespace {

constexpr double kPi = std::numbers::pi;

double runge_bump(double x) {
  const double t = 4.0 * x;
  return std::cos(3.0 * kPi * (t - 0.3)) / (1.0 + 25.0 * (t - 0.55) * (t - 0.55));
}

double step_ramp(double x) {
  return 0.1 * x * (10.0 + std::sin(20.0 * x) + std::sin(50.0 * x)) - 1.3;
}

// Smooth bump for C1 <= 0.5, shifted oscillating ramp above; the jump at
// C1 = 0.5 is about 0.56. Values over [0,1] stay inside [0.1022, 0.9971].
double f2_opt(double c1) {
  double v = runge_bump(c1);
  if (c1 > 0.5) v += step_ramp(c1);
  return v / 1.5 + 0.7;
}

double f1_opt(double c1) { return 4.0 * (c1 - 0.5) * (c1 - 0.5); }

double f3_opt(const Eigen::Ref<const Vector>& c) {
  return 1.0 + 0.5 * c[0] + 0.5 * c[1];
}

double f4_opt(const Eigen::Ref<const Vector>& c) {
  return 0.6 * (std::abs(c[0]) >= 0.5 ? 1.0 : 0.0) + c[3] * c[3] +
         0.5 * std::log(std::abs(c[6]) + 1.0);
}

void check_covariates(const ScenarioSpec& spec,
                      const Eigen::Ref<const Vector>& c) {
  if (c.size() != spec.p) {
    throw ShapeError("scenario " + std::to_string(spec.id) +
                     ": expected " + std::to_string(spec.p) + " covariates");
  }
  for (Index i = 0; i < c.size(); ++i) {
    if (!spec.covariate_range.contains(c[i])) {
      throw DomainError("scenario " + std::to_string(spec.id) +
                        ": covariate outside its sampling range");
    }
  }
}

}  // namespace

const ScenarioSpec& scenario_spec(int id) {
  static const std::array<ScenarioSpec, 5> specs = {{
      {1, 1, {0.0, 1.0}, {0.0, 1.0}, 0.1, DosePolicy::Uniform},
      {2, 1, {0.0, 1.0}, {0.0, 1.0}, 0.1, DosePolicy::Uniform},
      {3, 30, {0.0, 2.0}, {-1.0, 1.0}, 1.0, DosePolicy::Uniform},
      {4, 10, {0.0, 2.0}, {-1.0, 1.0}, 1.0, DosePolicy::Uniform},
      {5, 10, {0.0, 2.0}, {-1.0, 1.0}, 1.0, DosePolicy::TruncatedNormal},
  }};
  if (id < 1 || id > 5) {
    throw DomainError("scenario id must lie in 1..5");
  }
  return specs[static_cast<std::size_t>(id - 1)];
}

double optimal_dose(const ScenarioSpec& spec, const Eigen::Ref<const Vector>& c) {
  check_covariates(spec, c);
  switch (spec.id) {
    case 1: return f1_opt(c[0]);
    case 2: return f2_opt(c[0]);
    case 3: return f3_opt(c);
    case 4:
    case 5: return f4_opt(c);
    default: throw DomainError("scenario id must lie in 1..5");
  }
}

double true_q(const ScenarioSpec& spec, const Eigen::Ref<const Vector>& c,
              double a) {
  check_covariates(spec, c);
  if (!spec.dose_range.contains(a)) {
    throw DomainError("scenario " + std::to_string(spec.id) +
                      ": dose outside the admissible interval");
  }
  switch (spec.id) {
    case 1: {
      const double d = f1_opt(c[0]) - a;
      return -100.0 * d * d;
    }
    case 2: {
      const double d = f2_opt(c[0]) - a;
      return -100.0 * d * d;
    }
    case 3: {
      const double d = f3_opt(c) - a;
      return 8.0 + 4.0 * c[0] - 2.0 * c[1] - 2.0 * c[2] - 25.0 * d * d;
    }
    case 4:
    case 5:
      return 8.0 + 4.0 * std::cos(2.0 * kPi * c[1]) - 2.0 * c[3] -
             8.0 * c[4] * c[4] * c[4] - 15.0 * std::abs(f4_opt(c) - a);
    default: throw DomainError("scenario id must lie in 1..5");
  }
}

Matrix sample_covariates(const ScenarioSpec& spec, Index n, CounterRng& rng) {
  if (n < 1) throw DomainError("sample_covariates: n must be >= 1");
  Matrix C(n, spec.p);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < spec.p; ++j) {
      C(i, j) = rng.uniform(spec.covariate_range.lo, spec.covariate_range.hi);
    }
  }
  return C;
}

Dataset sample_dataset(const ScenarioSpec& spec, Index n, CounterRng& rng) {
  if (n < 1) throw DomainError("sample_dataset: n must be >= 1");
  Dataset data;
  data.covariates.resize(n, spec.p);
  data.doses.resize(n);
  data.rewards.resize(n);
  data.dose_range = spec.dose_range;

  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < spec.p; ++j) {
      data.covariates(i, j) =
          rng.uniform(spec.covariate_range.lo, spec.covariate_range.hi);
    }
    const auto c = data.covariates.row(i).transpose();
    switch (spec.policy) {
      case DosePolicy::Uniform:
        data.doses[i] = rng.uniform(spec.dose_range.lo, spec.dose_range.hi);
        break;
      case DosePolicy::TruncatedNormal:
        data.doses[i] =
            sample_truncated_normal(optimal_dose(spec, c), spec.dose_range.lo,
                                    spec.dose_range.hi, 0.5, rng);
        break;
    }
    data.rewards[i] =
        true_q(spec, c, data.doses[i]) + spec.noise_sd * rng.normal();
  }
  return data;
}

}  // namespace lcsl
