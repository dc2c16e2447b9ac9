// diagnostics.hpp — scalar monitors evaluated on metric states: curvature
// concentration functionals, the Kazdan-Warner residual, the two sharp
// Sobolev-type inequalities, curvature mode spectra, decay-rate fits.

#pragma once

#include <span>
#include <vector>

#include "cmflow/conformal_metric.hpp"

namespace cmflow {

// F_p = int |R - R_bar|^p dsigma, p >= 2.
double f_p(const ConformalMetric& m, double p);
double f_p(const ConformalMetric& m, double p, const CircleField& curvature);

// The right side of the F_p evolution identity along the normalized flow:
//   dF_p/dt = -(alpha (p-1)/p) int |grad |x|^{p/2}|^2 dsigma
//             + (p - 1/2) int |x|^p x dsigma + p R_bar F_p
//             - (p / 4 pi) int |x|^{p-2} x dsigma * F_2,      x = R - R_bar.
double f_p_evolution_rhs(const ConformalMetric& m, double p);

// Max-norm of (u^2)''' + (u^2)' - R' u^-2 / 2. This combination vanishes
// identically when alpha = 4; other alpha are rejected.
double kazdan_warner_residual(const ConformalMetric& m);

// sup |u'| / u over the grid.
double harnack_ratio(const ConformalMetric& m);

// int (dR/dsigma)^2 dsigma = int u^2 R'^2 dtheta. For alpha = 1 this is the
// curvature-gradient energy controlling |kappa - kappa_bar|_inf.
double kappa_sigma_energy(const ConformalMetric& m);

struct InequalityReport {
  double functional_value;
  double sharp_bound;
  double deficit;       // slack toward the bound; nonnegative when it holds
  double equality_gap;  // deficit / |bound|
};

// int (u'^2 - u^2) dtheta * int u^-2 dtheta >= -4 pi^2, valid when both
// mode-1 integrals of u^-3 vanish (checked within 1e-8).
InequalityReport theorem_a_report(const CircleField& u);

// int (u'^2 - u^2/4) dtheta * int u^-2 dtheta >= -pi^2, no side condition.
InequalityReport theorem_b_report(const CircleField& u);

// Signed Fourier coefficients of R - R_bar for frequencies 1..n_max, in theta
// and resampled to uniform arc length sigma. For alpha = 1 states that have
// been sl2-normalized, the theta spectrum of the normalized state is the
// gamma spectrum of the original.
struct ModeAmplitudes {
  std::vector<double> a;  // a[k-1] = cos(k .) coefficient
  std::vector<double> b;
  double amplitude(int k) const;  // sqrt(a_k^2 + b_k^2), k = 1..n_max
};
struct CurvatureModeReport {
  ModeAmplitudes in_theta;
  ModeAmplitudes in_sigma;
};
CurvatureModeReport curvature_mode_amplitudes(const ConformalMetric& m, int n_max);

struct DecayFit {
  double rate;        // positive for decay ~ prefactor * exp(-rate t)
  double prefactor;
  double window_start;
  double window_end;
  double r_squared;
};

// Least squares on log(values) over samples with window_lo <= t <= window_hi.
// Requires at least 10 strictly positive samples in the window.
DecayFit fit_decay(std::span<const double> times, std::span<const double> values,
                   double window_lo, double window_hi);

}  // namespace cmflow
