// presets.hpp — named initial-data families for runs and verification
//
// Every preset comes back ready to flow: length-projected to L = 2 pi and,
// for alpha = 1, orthogonality-projected first so the curve reconstruction
// closes. Families that satisfy a condition in closed form skip the
// corresponding projection.

#pragma once

#include <cstdint>

#include "cmflow/conformal_metric.hpp"

namespace cmflow {

// u identically 1, the round state of either flow.
ConformalMetric round_state(double alpha, int n);

// u = 1 + amplitude cos(mode theta), projected. mode must sit strictly below
// the Nyquist frequency n/2 and |amplitude| < 1 keeps u positive.
ConformalMetric perturbed_round(double alpha, int n, int mode, double amplitude);

// u = sqrt(lambda^2 cos^2(t) + lambda^-2 sin^2(t)) at t = theta - angle: the
// equality family of the orthogonality-constrained sharp inequality, steady
// under alpha = 1 with arc length 2 pi and exact mode-1 orthogonality for
// every lambda > 0.
ConformalMetric theorem_a_extremal(double alpha, int n, double lambda,
                                   double angle);

// u = sqrt(lambda^2 cos^2(t/2) + lambda^-2 sin^2(t/2)) at t = theta - angle:
// the equality family of the unconstrained sharp inequality, constant
// curvature under alpha = 4. For alpha = 1 the re-centering moves the state
// off the family; equality members are alpha = 4 data.
ConformalMetric theorem_b_extremal(double alpha, int n, double lambda,
                                   double angle);

// u = 1 + sum over modes 1..modes of uniformly drawn cos/sin coefficients in
// [-amplitude, amplitude], reproducible from the seed, then projected.
// Throws if the draw loses positivity.
ConformalMetric random_bandlimited(double alpha, int n, int modes,
                                   double amplitude, std::uint64_t seed);

}  // namespace cmflow
