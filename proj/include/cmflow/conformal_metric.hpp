// conformal_metric.hpp — metrics g = u^-4 g_circle on S^1 and their curvature
// calculus for the alpha-family.
//
//   R_g      = u^3 (alpha * u'' + u)                     (alpha-scalar curvature)
//   L_g(psi) = alpha * u^2 (u^2 psi')' + R_g psi         (conformal Laplacian)
//   d sigma  = u^-2 d theta                              (arc length element)
//
// alpha = 4 is the Yamabe-type flow family, alpha = 1 the affine family.
// All primes are theta-derivatives; sigma denotes the arc-length variable.

#pragma once

#include "cmflow/circle_field.hpp"

namespace cmflow {

struct ConformalMetric {
  double alpha;
  CircleField u;

  // u must be strictly positive and stay clear of the positivity floor
  // min u > 1e-8 * max u; alpha must be positive.
  ConformalMetric(double alpha_in, CircleField u_in);
};

// u^3 (alpha u'' + u), evaluated spectrally.
CircleField alpha_curvature(const ConformalMetric& m);

// Mean of the curvature in the metric's own measure:
// int R u^-2 dtheta / int u^-2 dtheta.
double mean_curvature(const ConformalMetric& m);

// L(g) = int u^-2 dtheta.
double arc_length(const ConformalMetric& m);

// alpha u^2 (u^2 psi')' + R psi.
CircleField conformal_laplacian_apply(const ConformalMetric& m, const CircleField& psi);

// Max-norm of L_{g2}(psi) - phi^3 L_{g1}(psi phi) with g2 = phi^-4 g1,
// i.e. u2 = u1 * phi. Zero in exact arithmetic for any positive phi.
double covariance_residual(const ConformalMetric& m1, const CircleField& phi,
                           const CircleField& psi);

// Cumulative arc length sigma(theta) = int_0^theta u^-2, with sigma(0) = 0.
// sigma increases strictly; sigma(2 pi) = total_length. The stored field holds
// the samples sigma(theta_j); the off-grid value is ramp + periodic part.
class SigmaChart {
 public:
  SigmaChart(CircleField sigma_samples, CircleField periodic_part, double total_length);

  const CircleField& sigma_of_theta() const { return sigma_samples_; }
  double total_length() const { return total_length_; }

  double sigma_at(double theta) const;
  // Monotone inverse on [0, total_length); bisection to ~1e-13.
  double theta_from_sigma(double sigma) const;

 private:
  CircleField sigma_samples_;
  CircleField periodic_part_;  // sigma(theta) - (L / 2 pi) theta
  TrigInterpolant periodic_interp_;
  double total_length_;
};

SigmaChart sigma_chart(const ConformalMetric& m);

// Pointwise powers of the conformal factor come up constantly.
CircleField pow_field(const CircleField& f, double expo);

}  // namespace cmflow
