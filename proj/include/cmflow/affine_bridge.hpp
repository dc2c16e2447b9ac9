// affine_bridge.hpp — the correspondence between alpha = 1 metrics and convex
// plane curves. A metric u with the mode-1 integrals of u^-3 vanishing is the
// affine support chart of a closed strictly convex curve: the curve has
// support function h (in the gauge h(0) = h'(0) = 0 up to translation),
// h'' + h = u^-3, affine curvature kappa = R, and embedding
//   C(theta) = (int_0^theta u^-3 cos, int_0^theta u^-3 sin).
// The SL(2) action on curves pulls back to the substitution
//   (T_{lambda,alpha} u)(theta) = u(sigma_{lambda,alpha}(theta)) *
//       psi_{lambda,alpha}(theta),
// with psi_{lambda,alpha} = sqrt(lambda cos^2(theta - alpha)
//                                + sin^2(theta - alpha) / lambda).

#pragma once

#include <array>
#include <vector>

#include "cmflow/conformal_metric.hpp"
#include "cmflow/flow_engine.hpp"

namespace cmflow {

struct CurveEmbedding {
  std::vector<std::array<double, 2>> points;  // C(theta_j), one per grid node
  CircleField support;                        // h, mode-1 gauge h(0) = h'(0) = 0
  double area;
  double perimeter;
  double closure_defect;  // |C(2 pi) - C(0)|, zero iff mode-1 of u^-3 vanishes
};

// Requires alpha = 1. A nonzero closure defect (the state violates the mode-1
// condition) is reported in the result, not rejected; support, area and
// perimeter then describe the closed-up recentered curve.
CurveEmbedding reconstruct_curve(const ConformalMetric& m);

CircleField support_function(const ConformalMetric& m);

// 1/2 int h u^-3 dtheta. Rejects states whose closure defect exceeds 1e-4;
// the enclosed area of an open curve is not defined.
double euclidean_area(const ConformalMetric& m);

// Residuals of d(area)/dt = (3/2)(kappa_bar * area - pi) along a recorded
// alpha = 1 trajectory, one centered difference per interior sample.
std::vector<double> area_ode_residual(const TrajectoryRecord& record);

// Max-norm residual of the support-function evolution
//   dh/dt = (3/4)(kappa_bar h - u + u(0,t) cos + u'(0,t) sin)
// across one recorded interval, with the right side averaged at the ends.
double support_evolution_residual(const FlowState& before, const FlowState& after);

struct Sl2Params {
  double lambda = 1.0;      // positive
  double alpha_angle = 0.0;  // rotation angle of the axis
};

double sl2_multiplier(double theta, const Sl2Params& p);  // psi_{lambda,alpha}
double sl2_chart(double theta, const Sl2Params& p);       // sigma_{lambda,alpha}

// Pullback T_{lambda,alpha} u sampled on the grid of u. Inverse params are
// {1/lambda, alpha}.
ConformalMetric sl2_transform(const ConformalMetric& m, const Sl2Params& p);

struct Sl2Normalization {
  ConformalMetric metric;  // T_{lambda,alpha} u at the optimum
  Sl2Params params;
  double perimeter;  // int (T u)^-3 dtheta at the optimum
  int iterations;
};

// Minimizes the reconstructed curve's perimeter over the SL(2) orbit of m
// (alpha = 1, orthogonal states only). At the optimum the mode-2 integrals of
// (T u)^-3 vanish within 1e-8. Fails if the damped Newton iteration has not
// converged after 100 steps or lambda leaves [1e-4, 1e4].
Sl2Normalization sl2_normalize(const ConformalMetric& m);

// Fits a strictly convex polygon (16 or more vertices, turning exactly once)
// with a periodic cubic spline in the support chart, low-passes the fit below
// the knot frequency, and returns the alpha = 1 metric of the smoothed body,
// orthogonality- and length-projected.
ConformalMetric ingest_polygon(const std::vector<std::array<double, 2>>& vertices,
                               int n);

}  // namespace cmflow
