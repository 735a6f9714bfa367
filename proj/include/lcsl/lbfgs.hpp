#pragma once

#include <functional>

#include "lcsl/types.hpp"

namespace lcsl {

/// Objective callback. Fills `f` (and `grad` when non-null) at `x`; returns
/// false when the point cannot be evaluated (e.g. a factorization failed),
/// which the line search treats as an infinite value.
using BoxedObjective = std::function<bool(const Vector& x, double& f, Vector* grad)>;

struct LbfgsOptions {
  int max_iters{200};
  double grad_tol{1e-6};  // on the projected gradient step norm
  int memory{10};
  int max_backtracks{60};
};

struct LbfgsResult {
  Vector x;
  double f{0.0};
  int iterations{0};
  bool converged{false};
  bool start_failed{false};  // objective not evaluable at x0
};

/// Minimizes fn over the box [lo, hi] by L-BFGS with projection: search
/// directions come from the two-loop recursion, trial points are clamped to
/// the box, and an Armijo backtracking line search accepts steps. Curvature
/// pairs that fail the positivity check are skipped.
LbfgsResult minimize_box(const BoxedObjective& fn, Vector x0, const Vector& lo,
                         const Vector& hi, const LbfgsOptions& opts = {});

}  // namespace lcsl
