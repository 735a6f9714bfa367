#pragma once

#include "lcsl/types.hpp"

namespace lcsl {

/// ARD squared-exponential covariance with a nugget:
///   k(x_p, x_q) = sigma_f2 * exp{-sum_i (x_pi - x_qi)^2 / (2 theta_i)}
///                 + sigma_n2 * delta_pq.
/// theta_i is a squared length-scale (the ell^2 convention divides by
/// 2*ell_i^2; here theta_i = ell_i^2). Inputs are [covariates, dose] rows,
/// dose in the last dimension with its own length-scale.
struct Hyperparameters {
  double sigma_f2{1.0};
  Vector theta;  // one squared length-scale per input dimension, dose last
  double sigma_n2{0.0};

  Index dims() const { return theta.size(); }
};

/// Throws DomainError unless sigma_f2 > 0, every theta_i > 0, sigma_n2 >= 0
/// and all values are finite.
void validate(const Hyperparameters& hp);

/// Single covariance value. `same_point` encodes the Kronecker delta: it is
/// true only when x_p and x_q are the same element of one point set, never
/// decided by coordinate comparison.
double kernel_eval(const Eigen::Ref<const Vector>& x_p,
                   const Eigen::Ref<const Vector>& x_q,
                   const Hyperparameters& hp, bool same_point);

/// n x n covariance matrix over the rows of X; the nugget appears on the
/// diagonal only. Exactly symmetric by construction.
Matrix gram_matrix(const Eigen::Ref<const Matrix>& X, const Hyperparameters& hp);

/// Covariances between a query point and each training row; no nugget.
Vector cross_covariance(const Eigen::Ref<const Matrix>& X,
                        const Eigen::Ref<const Vector>& x_star,
                        const Hyperparameters& hp);

/// exp{-sum_j (X_ij - x_j)^2 / (2 theta_j)} per row of X, for the given
/// subset of dimensions. The noise-free kernel factorizes as
/// sigma_f2 * similarity(covariate dims) * similarity(dose dim); the
/// covariate factor is what the dose-coefficient expansion reuses.
Vector sq_exp_similarity(const Eigen::Ref<const Matrix>& X,
                         const Eigen::Ref<const Vector>& x,
                         const Eigen::Ref<const Vector>& theta);

}  // namespace lcsl
