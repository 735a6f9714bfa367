#include "lcsl/kernel.hpp"

#include <cmath>

namespace lcsl {

void validate(const Hyperparameters& hp) {
  if (!(hp.sigma_f2 > 0.0) || !std::isfinite(hp.sigma_f2)) {
    throw DomainError("Hyperparameters: sigma_f2 must be positive and finite");
  }
  if (hp.theta.size() == 0) {
    throw DomainError("Hyperparameters: theta must be non-empty");
  }
  for (Index i = 0; i < hp.theta.size(); ++i) {
    if (!(hp.theta[i] > 0.0) || !std::isfinite(hp.theta[i])) {
      throw DomainError("Hyperparameters: every theta must be positive and finite");
    }
  }
  if (!(hp.sigma_n2 >= 0.0) || !std::isfinite(hp.sigma_n2)) {
    throw DomainError("Hyperparameters: sigma_n2 must be non-negative and finite");
  }
}

double kernel_eval(const Eigen::Ref<const Vector>& x_p,
                   const Eigen::Ref<const Vector>& x_q,
                   const Hyperparameters& hp, bool same_point) {
  const Index d = hp.dims();
  if (x_p.size() != d || x_q.size() != d) {
    throw ShapeError("kernel_eval: input dimension does not match theta");
  }
  if (!x_p.allFinite() || !x_q.allFinite()) {
    throw DomainError("kernel_eval: inputs must be finite");
  }
  double expo = 0.0;
  for (Index i = 0; i < d; ++i) {
    const double diff = x_p[i] - x_q[i];
    expo += diff * diff / hp.theta[i];
  }
  double value = hp.sigma_f2 * std::exp(-0.5 * expo);
  if (same_point) value += hp.sigma_n2;
  return value;
}

Matrix gram_matrix(const Eigen::Ref<const Matrix>& X, const Hyperparameters& hp) {
  const Index n = X.rows();
  if (n < 1) throw ShapeError("gram_matrix: need at least one row");
  if (X.cols() != hp.dims()) {
    throw ShapeError("gram_matrix: input dimension does not match theta");
  }

  // Accumulate the length-scale-weighted squared distances one dimension at
  // a time; (a-b)^2 is computed from the literal difference, so the matrix
  // is exactly symmetric and free of the usual |a|^2+|b|^2-2ab cancellation.
  Matrix dist = Matrix::Zero(n, n);
  for (Index j = 0; j < X.cols(); ++j) {
    const auto col = X.col(j);
    const double inv_theta = 1.0 / hp.theta[j];
    dist.array() += (col.replicate(1, n).array() -
                     col.transpose().replicate(n, 1).array())
                        .square() *
                    inv_theta;
  }

  Matrix K = hp.sigma_f2 * (-0.5 * dist.array()).exp();
  K.diagonal().setConstant(hp.sigma_f2 + hp.sigma_n2);
  return K;
}

Vector cross_covariance(const Eigen::Ref<const Matrix>& X,
                        const Eigen::Ref<const Vector>& x_star,
                        const Hyperparameters& hp) {
  if (X.cols() != hp.dims() || x_star.size() != hp.dims()) {
    throw ShapeError("cross_covariance: input dimension does not match theta");
  }
  return hp.sigma_f2 * sq_exp_similarity(X, x_star, hp.theta).array();
}

Vector sq_exp_similarity(const Eigen::Ref<const Matrix>& X,
                         const Eigen::Ref<const Vector>& x,
                         const Eigen::Ref<const Vector>& theta) {
  if (X.cols() != x.size() || X.cols() != theta.size()) {
    throw ShapeError("sq_exp_similarity: mismatched dimensions");
  }
  Vector dist = Vector::Zero(X.rows());
  for (Index j = 0; j < X.cols(); ++j) {
    dist.array() +=
        (X.col(j).array() - x[j]).square() / theta[j];
  }
  return (-0.5 * dist.array()).exp();
}

}  // namespace lcsl
