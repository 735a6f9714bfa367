#include "lcsl/policy.hpp"

#include <algorithm>
#include <cmath>

#include "lcsl/stats.hpp"

namespace lcsl {
namespace {

// Brent's method (golden section with parabolic steps) maximizing fn on
// [lo, hi]; tolerance on the argument.
template <typename Fn>
std::pair<double, double> brent_maximize(const Fn& fn, double lo, double hi,
                                         double xtol, int max_iters = 100) {
  constexpr double golden = 0.3819660112501051;
  double a = lo, b = hi;
  double x = a + golden * (b - a);
  double w = x, v = x;
  double fx = fn(x), fw = fx, fv = fx;
  double d = 0.0, e = 0.0;

  for (int iter = 0; iter < max_iters; ++iter) {
    const double xm = 0.5 * (a + b);
    const double tol1 = xtol * std::abs(x) + 1e-12;
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - xm) <= tol2 - 0.5 * (b - a)) break;

    bool use_golden = true;
    if (std::abs(e) > tol1) {
      // parabolic fit through (v, fv), (w, fw), (x, fx)
      const double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      const double e_old = e;
      e = d;
      if (std::abs(p) < std::abs(0.5 * q * e_old) && p > q * (a - x) &&
          p < q * (b - x)) {
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = (xm > x) ? tol1 : -tol1;
        use_golden = false;
      }
    }
    if (use_golden) {
      e = (x >= xm) ? a - x : b - x;
      d = golden * e;
    }
    const double u = (std::abs(d) >= tol1) ? x + d : x + (d > 0 ? tol1 : -tol1);
    const double fu = fn(u);
    if (fu >= fx) {
      if (u >= x) a = x; else b = x;
      v = w; fv = fw;
      w = x; fw = fx;
      x = u; fx = fu;
    } else {
      if (u < x) a = u; else b = u;
      if (fu >= fw || w == x) {
        v = w; fv = fw;
        w = u; fw = fu;
      } else if (fu >= fv || v == x || v == w) {
        v = u; fv = fu;
      }
    }
  }
  return {x, fx};
}

}  // namespace

PenaltySpec PenaltySpec::from_percentile(int percentile) {
  if (percentile < 50 || percentile > 99) {
    throw DomainError("PenaltySpec: percentile must lie in [50, 99]");
  }
  PenaltySpec spec;
  spec.percentile = percentile;
  spec.s = (percentile == 50)
               ? 0.0
               : inverse_normal_cdf(static_cast<double>(percentile) / 100.0);
  return spec;
}

DoseCoefficients dose_coefficients(const FittedGp& model,
                                   const Eigen::Ref<const Vector>& c_star) {
  const Index p = model.dims() - 1;
  if (c_star.size() != p) {
    throw ShapeError("dose_coefficients: covariate vector must have length p");
  }

  // Covariate similarity u_i; the dose dimension is excluded and re-enters
  // through E_i(a) at evaluation time.
  const Vector u = sq_exp_similarity(model.inputs.leftCols(p), c_star,
                                     model.hp.theta.head(p));

  DoseCoefficients coeffs;
  const double sf2 = model.hp.sigma_f2;
  coeffs.alpha = sf2 * u.cwiseProduct(model.weights);
  coeffs.gamma =
      (sf2 * sf2) * (u * u.transpose()).cwiseProduct(model.precision);
  coeffs.k_star_star = sf2;
  coeffs.train_doses = model.inputs.col(p);
  coeffs.theta_dose = model.hp.theta[p];
  coeffs.dose_range = model.dose_range;
  return coeffs;
}

MeanSd posterior_at_dose(const DoseCoefficients& coeffs, double a) {
  const Vector e =
      (-0.5 * (coeffs.train_doses.array() - a).square() / coeffs.theta_dose)
          .exp();
  MeanSd out;
  out.mean = coeffs.alpha.dot(e);
  const double quad = e.dot(coeffs.gamma * e);
  out.sd = std::sqrt(std::max(0.0, coeffs.k_star_star - quad));
  return out;
}

double lcsl_objective(const DoseCoefficients& coeffs, double a, double s) {
  if (!(s >= 0.0)) throw DomainError("lcsl_objective: s must be >= 0");
  const MeanSd ms = posterior_at_dose(coeffs, a);
  return ms.mean - s * ms.sd;
}

DoseGridProfile dose_grid_profile(const DoseCoefficients& coeffs, int grid_size) {
  if (grid_size < 2) throw DomainError("dose_grid_profile: grid_size must be >= 2");
  DoseGridProfile prof;
  prof.doses.resize(grid_size);
  prof.means.resize(grid_size);
  prof.sds.resize(grid_size);
  const double lo = coeffs.dose_range.lo;
  const double step = coeffs.dose_range.width() / (grid_size - 1);
  for (int k = 0; k < grid_size; ++k) {
    const double a = (k == grid_size - 1) ? coeffs.dose_range.hi : lo + k * step;
    const MeanSd ms = posterior_at_dose(coeffs, a);
    prof.doses[k] = a;
    prof.means[k] = ms.mean;
    prof.sds[k] = ms.sd;
  }
  return prof;
}

DoseRecommendation recommend_dose(const DoseCoefficients& coeffs,
                                  const PenaltySpec& penalty, int grid_size,
                                  bool refine) {
  const DoseGridProfile prof = dose_grid_profile(coeffs, grid_size);

  // Ascending scan with strict improvement keeps ties at the smallest dose.
  int best = 0;
  double best_obj = prof.means[0] - penalty.s * prof.sds[0];
  for (int k = 1; k < grid_size; ++k) {
    const double obj = prof.means[k] - penalty.s * prof.sds[k];
    if (obj > best_obj) {
      best = k;
      best_obj = obj;
    }
  }

  DoseRecommendation rec;
  rec.grid_argmax = prof.doses[best];
  rec.dose = prof.doses[best];
  rec.objective = best_obj;
  rec.mean = prof.means[best];
  rec.sd = prof.sds[best];

  if (refine) {
    const double lo = prof.doses[std::max(0, best - 1)];
    const double hi = prof.doses[std::min(grid_size - 1, best + 1)];
    const auto [a_ref, f_ref] = brent_maximize(
        [&](double a) { return lcsl_objective(coeffs, a, penalty.s); }, lo, hi,
        1e-10);
    if (f_ref > rec.objective) {
      const MeanSd ms = posterior_at_dose(coeffs, a_ref);
      rec.dose = a_ref;
      rec.objective = ms.mean - penalty.s * ms.sd;
      rec.mean = ms.mean;
      rec.sd = ms.sd;
    }
  }
  return rec;
}

DoseRecommendation recommend_dose(const FittedGp& model,
                                  const Eigen::Ref<const Vector>& c_star,
                                  const PenaltySpec& penalty, int grid_size,
                                  bool refine) {
  return recommend_dose(dose_coefficients(model, c_star), penalty, grid_size,
                        refine);
}

std::vector<Contribution> explain(const FittedGp& model,
                                  const Eigen::Ref<const Vector>& c_star,
                                  double dose, Index top_k) {
  const Index p = model.dims() - 1;
  if (c_star.size() != p) {
    throw ShapeError("explain: covariate vector must have length p");
  }
  if (top_k < 0 || top_k > model.n()) {
    throw ShapeError("explain: top_k must lie in [0, n]");
  }
  Vector x_star(model.dims());
  x_star.head(p) = c_star;
  x_star[p] = dose;

  const Vector k_star = cross_covariance(model.inputs, x_star, model.hp);
  std::vector<Contribution> all(model.n());
  for (Index i = 0; i < model.n(); ++i) {
    all[i] = {i, k_star[i] * model.weights[i]};
  }
  std::stable_sort(all.begin(), all.end(),
                   [](const Contribution& a, const Contribution& b) {
                     return std::abs(a.value) > std::abs(b.value);
                   });
  all.resize(top_k);
  return all;
}

Vector feature_relevances(const FittedGp& model) {
  return model.hp.theta.cwiseInverse();
}

}  // namespace lcsl
