#include "lcsl/lbfgs.hpp"

#include <cmath>
#include <deque>

namespace lcsl {
namespace {

Vector clamp_to_box(Vector x, const Vector& lo, const Vector& hi) {
  return x.cwiseMax(lo).cwiseMin(hi);
}

struct CurvaturePair {
  Vector s;
  Vector y;
  double rho;
};

// Two-loop recursion; H0 scaled by the latest s'y / y'y.
Vector lbfgs_direction(const Vector& grad, const std::deque<CurvaturePair>& mem) {
  Vector q = -grad;
  if (mem.empty()) return q;
  std::vector<double> a(mem.size());
  for (std::size_t i = mem.size(); i-- > 0;) {
    a[i] = mem[i].rho * mem[i].s.dot(q);
    q -= a[i] * mem[i].y;
  }
  const auto& last = mem.back();
  q *= last.s.dot(last.y) / last.y.squaredNorm();
  for (std::size_t i = 0; i < mem.size(); ++i) {
    const double b = mem[i].rho * mem[i].y.dot(q);
    q += (a[i] - b) * mem[i].s;
  }
  return q;
}

}  // namespace

LbfgsResult minimize_box(const BoxedObjective& fn, Vector x0, const Vector& lo,
                         const Vector& hi, const LbfgsOptions& opts) {
  LbfgsResult res;
  Vector x = clamp_to_box(std::move(x0), lo, hi);
  const Index d = x.size();

  double f = 0.0;
  Vector grad(d);
  if (!fn(x, f, &grad)) {
    res.x = std::move(x);
    res.start_failed = true;
    return res;
  }

  std::deque<CurvaturePair> mem;
  for (int iter = 0; iter < opts.max_iters; ++iter) {
    res.iterations = iter;
    const Vector proj_step = clamp_to_box(x - grad, lo, hi) - x;
    if (proj_step.norm() < opts.grad_tol) {
      res.converged = true;
      break;
    }

    Vector dir = lbfgs_direction(grad, mem);
    if (dir.dot(grad) >= 0.0) {  // not a descent direction; restart memory
      mem.clear();
      dir = -grad;
    }

    // Armijo backtracking along the projected path.
    const double f_prev = f;
    double step = (iter == 0) ? std::min(1.0, 1.0 / grad.lpNorm<1>()) : 1.0;
    bool accepted = false;
    Vector x_new(d), grad_new(d);
    double f_new = 0.0;
    for (int bt = 0; bt < opts.max_backtracks; ++bt) {
      x_new = clamp_to_box(x + step * dir, lo, hi);
      const Vector delta = x_new - x;
      if (delta.norm() == 0.0) break;
      if (fn(x_new, f_new, nullptr) &&
          f_new <= f_prev + 1e-4 * grad.dot(delta)) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      res.converged = true;  // no admissible descent step remains
      break;
    }

    if (!fn(x_new, f_new, &grad_new)) break;  // should not happen; be safe

    const Vector s = x_new - x;
    const Vector y = grad_new - grad;
    const double sy = s.dot(y);
    if (sy > 1e-10 * s.norm() * y.norm()) {
      mem.push_back({s, y, 1.0 / sy});
      if (static_cast<int>(mem.size()) > opts.memory) mem.pop_front();
    }

    x = std::move(x_new);
    f = f_new;
    grad = std::move(grad_new);
  }

  res.x = std::move(x);
  res.f = f;
  return res;
}

}  // namespace lcsl
