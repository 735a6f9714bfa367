#pragma once

#include "lcsl/rng.hpp"

namespace lcsl {

/// Standard normal CDF.
double normal_cdf(double x);

/// Standard normal survival function 1 - CDF, accurate in the upper tail.
double normal_sf(double x);

/// Standard normal quantile. Rational initial guess plus one Halley
/// refinement; absolute error is below 1e-14 over (0, 1). Mirrors p > 1/2
/// through the exactly representable complement, so
/// inverse_normal_cdf(p) == -inverse_normal_cdf(1 - p) holds bit-exactly
/// whenever p > 1/2. Throws DomainError outside (0, 1).
double inverse_normal_cdf(double p);

/// Draw from N(mean, sd^2) conditioned on [lo, hi]. Rejection sampling from
/// the untruncated normal; when the acceptance probability is below 1e-3 the
/// draw falls back to inverse-CDF sampling (tail-stable). Requires lo < hi
/// and sd > 0.
double sample_truncated_normal(double mean, double lo, double hi, double sd,
                               CounterRng& rng);

}  // namespace lcsl
