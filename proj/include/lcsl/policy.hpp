#pragma once

#include <vector>

#include "lcsl/gp.hpp"

namespace lcsl {

/// Uncertainty penalty expressed as a normal percentile X in [50, 99];
/// s = Phi^-1(X / 100), so percentile 50 turns the penalty off.
struct PenaltySpec {
  int percentile{50};
  double s{0.0};

  static PenaltySpec from_percentile(int percentile);
  static PenaltySpec mean_only() { return {50, 0.0}; }
};

/// Coefficient form of the lower-confidence objective for one covariate
/// vector c_*: with E_i(a) = exp{-(a - a_i)^2 / (2 theta_dose)},
///   mean(a)     = sum_i alpha_i E_i(a)
///   variance(a) = k_star_star - sum_ij gamma_ij E_i(a) E_j(a)
/// where alpha_i folds the covariate similarity into the GP weights and
/// gamma_ij = sigma_f2^2 * precision_ij * (covariate factors). Everything
/// here is independent of the dose, so scanning doses costs O(n^2) each.
struct DoseCoefficients {
  Vector alpha;         // n
  Matrix gamma;         // n x n, symmetric
  double k_star_star;   // sigma_f2
  Vector train_doses;   // n
  double theta_dose;
  Interval dose_range;
};

DoseCoefficients dose_coefficients(const FittedGp& model,
                                   const Eigen::Ref<const Vector>& c_star);

/// Posterior mean and sd at one dose, from the coefficient form.
struct MeanSd {
  double mean{0.0};
  double sd{0.0};
};
MeanSd posterior_at_dose(const DoseCoefficients& coeffs, double a);

/// mean(a) - s * sd(a); the variance is clamped at zero before the root.
double lcsl_objective(const DoseCoefficients& coeffs, double a, double s);

/// Mean/sd profile over an inclusive equally spaced dose grid. One grid is
/// shared by every penalty level, which is what makes penalty sweeps cheap.
struct DoseGridProfile {
  Vector doses;
  Vector means;
  Vector sds;
};
DoseGridProfile dose_grid_profile(const DoseCoefficients& coeffs, int grid_size);

struct DoseRecommendation {
  double dose{0.0};
  double objective{0.0};  // scaled-reward scale
  double mean{0.0};
  double sd{0.0};
  double grid_argmax{0.0};  // best grid seed before refinement
};

/// Maximizes the lower-confidence objective over the dose interval on a
/// grid_size-point grid (ties to the smallest dose); when `refine` is set, a
/// derivative-free local ascent runs inside the bracket formed by the
/// neighbours of the best grid point and the better value wins.
DoseRecommendation recommend_dose(const DoseCoefficients& coeffs,
                                  const PenaltySpec& penalty, int grid_size = 50,
                                  bool refine = false);
DoseRecommendation recommend_dose(const FittedGp& model,
                                  const Eigen::Ref<const Vector>& c_star,
                                  const PenaltySpec& penalty, int grid_size = 50,
                                  bool refine = false);

/// Per-training-point additive share of the posterior mean at
/// [c_star, dose]: contribution_i = k(x_*, x_i) * weights_i. Sorted by
/// absolute value descending, ties by index; the top k entries are returned
/// and the full set sums to the posterior mean.
struct Contribution {
  Index index{0};
  double value{0.0};
};
std::vector<Contribution> explain(const FittedGp& model,
                                  const Eigen::Ref<const Vector>& c_star,
                                  double dose, Index top_k);

/// ARD relevance per input dimension (dose last): 1 / theta_i.
Vector feature_relevances(const FittedGp& model);

}  // namespace lcsl
