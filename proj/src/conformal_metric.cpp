#include "cmflow/conformal_metric.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cmflow {

ConformalMetric::ConformalMetric(double alpha_in, CircleField u_in)
    : alpha(alpha_in), u(std::move(u_in)) {
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("ConformalMetric: alpha must be positive");
  }
  const double lo = u.min();
  const double hi = u.max();
  if (!(lo > 0.0) || lo <= 1e-8 * hi) {
    throw std::invalid_argument(
        "ConformalMetric: conformal factor touches the positivity floor (min " +
        std::to_string(lo) + ", max " + std::to_string(hi) + ")");
  }
}

CircleField pow_field(const CircleField& f, double expo) {
  return apply(f, [expo](double x) { return std::pow(x, expo); });
}

CircleField alpha_curvature(const ConformalMetric& m) {
  CircleField upp = derivative(m.u, 2);
  const double alpha = m.alpha;
  return combine(m.u, upp, [alpha](double u, double w) {
    return u * u * u * (alpha * w + u);
  });
}

double arc_length(const ConformalMetric& m) {
  return integrate(apply(m.u, [](double u) { return 1.0 / (u * u); }));
}

double mean_curvature(const ConformalMetric& m) {
  CircleField r = alpha_curvature(m);
  double num = 0.0, den = 0.0;
  for (int j = 0; j < m.u.size(); ++j) {
    const double w = 1.0 / (m.u[j] * m.u[j]);
    num += r[j] * w;
    den += w;
  }
  return num / den;
}

CircleField conformal_laplacian_apply(const ConformalMetric& m, const CircleField& psi) {
  if (psi.size() != m.u.size()) {
    throw std::invalid_argument("conformal_laplacian_apply: grid size mismatch");
  }
  CircleField u2 = m.u * m.u;
  CircleField inner = u2 * derivative(psi, 1);
  CircleField outer = u2 * derivative(inner, 1);
  CircleField r = alpha_curvature(m);
  const double alpha = m.alpha;
  std::vector<double> s(psi.size());
  for (int j = 0; j < psi.size(); ++j) {
    s[j] = alpha * outer[j] + r[j] * psi[j];
  }
  return CircleField(std::move(s));
}

double covariance_residual(const ConformalMetric& m1, const CircleField& phi,
                           const CircleField& psi) {
  if (phi.size() != m1.u.size() || psi.size() != m1.u.size()) {
    throw std::invalid_argument("covariance_residual: grid size mismatch");
  }
  if (phi.min() <= 0.0) {
    throw std::invalid_argument("covariance_residual: phi must be strictly positive");
  }
  ConformalMetric m2(m1.alpha, m1.u * phi);
  CircleField lhs = conformal_laplacian_apply(m2, psi);
  CircleField rhs = conformal_laplacian_apply(m1, psi * phi);
  double worst = 0.0;
  for (int j = 0; j < lhs.size(); ++j) {
    const double p = phi[j];
    worst = std::max(worst, std::abs(lhs[j] - p * p * p * rhs[j]));
  }
  return worst;
}

SigmaChart::SigmaChart(CircleField sigma_samples, CircleField periodic_part,
                       double total_length)
    : sigma_samples_(std::move(sigma_samples)),
      periodic_part_(std::move(periodic_part)),
      periodic_interp_(periodic_part_),
      total_length_(total_length) {}

double SigmaChart::sigma_at(double theta) const {
  return (total_length_ / kTwoPi) * theta + periodic_interp_(theta);
}

double SigmaChart::theta_from_sigma(double sigma) const {
  if (sigma < 0.0 || sigma >= total_length_) {
    throw std::invalid_argument("theta_from_sigma: sigma outside [0, L)");
  }
  double lo = 0.0, hi = kTwoPi;
  // sigma_at is strictly increasing (derivative u^-2 > 0), so plain bisection
  // is safe; 64 halvings put theta well below quadrature error.
  for (int it = 0; it < 64; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (sigma_at(mid) < sigma) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

SigmaChart sigma_chart(const ConformalMetric& m) {
  CircleField w = apply(m.u, [](double u) { return 1.0 / (u * u); });
  CumulativeIntegral F = cumulative_integral(w);
  const double L = F.slope * kTwoPi;
  std::vector<double> periodic(w.size());
  for (int j = 0; j < w.size(); ++j) {
    periodic[j] = F.values[j] - F.slope * F.values.grid_point(j);
  }
  return SigmaChart(F.values, CircleField(std::move(periodic)), L);
}

}  // namespace cmflow
