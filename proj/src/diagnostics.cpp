#include "cmflow/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cmflow {

namespace {

// |x|^e with the e = 0 case pinned to 1 so p = 2 needs no special casing.
double abs_pow(double x, double e) {
  if (e == 0.0) return 1.0;
  return std::pow(std::abs(x), e);
}

CircleField deviation_field(const ConformalMetric& m, const CircleField& r) {
  double num = 0.0;
  double den = 0.0;
  for (int j = 0; j < m.u.size(); ++j) {
    double w = 1.0 / (m.u[j] * m.u[j]);
    num += r[j] * w;
    den += w;
  }
  double rbar = num / den;
  std::vector<double> x(m.u.size());
  for (int j = 0; j < m.u.size(); ++j) x[j] = r[j] - rbar;
  return CircleField(std::move(x));
}

void check_order(double p) {
  if (!(p >= 2.0) || !std::isfinite(p))
    throw std::invalid_argument("moment order p must satisfy p >= 2");
}

}  // namespace

double f_p(const ConformalMetric& m, double p) {
  return f_p(m, p, alpha_curvature(m));
}

double f_p(const ConformalMetric& m, double p, const CircleField& curvature) {
  check_order(p);
  CircleField x = deviation_field(m, curvature);
  double sum = 0.0;
  for (int j = 0; j < m.u.size(); ++j)
    sum += abs_pow(x[j], p) / (m.u[j] * m.u[j]);
  return kTwoPi / m.u.size() * sum;
}

double f_p_evolution_rhs(const ConformalMetric& m, double p) {
  check_order(p);
  const CircleField& u = m.u;
  int n = u.size();
  CircleField r = alpha_curvature(m);
  CircleField x = deviation_field(m, r);
  CircleField xp = derivative(x, 1);
  double rbar = r[0] - x[0];  // x = r - rbar pointwise

  // grad = int |d/dsigma |x|^{p/2}|^2 dsigma = (p^2/4) int |x|^{p-2} x'^2 u^2 dtheta,
  // written without differentiating the |x|^{p/2} cusp.
  double grad = 0.0;
  double fp = 0.0;
  double f2 = 0.0;
  double skew = 0.0;   // int |x|^p x dsigma
  double drift = 0.0;  // int |x|^{p-2} x dsigma
  for (int j = 0; j < n; ++j) {
    double w = 1.0 / (u[j] * u[j]);
    double core = abs_pow(x[j], p - 2.0);
    grad += core * xp[j] * xp[j] * u[j] * u[j];
    fp += core * x[j] * x[j] * w;
    f2 += x[j] * x[j] * w;
    skew += core * x[j] * x[j] * x[j] * w;
    drift += core * x[j] * w;
  }
  double h = kTwoPi / n;
  grad *= h * p * p / 4.0;
  fp *= h;
  f2 *= h;
  skew *= h;
  drift *= h;

  return -(m.alpha * (p - 1.0) / p) * grad + (p - 0.5) * skew + p * rbar * fp -
         (p / (2.0 * kTwoPi)) * drift * f2;
}

double kazdan_warner_residual(const ConformalMetric& m) {
  if (m.alpha != 4.0)
    throw std::domain_error("the Kazdan-Warner identity is specific to alpha = 4");
  const CircleField& u = m.u;
  CircleField v = u * u;
  CircleField v3 = derivative(v, 3);
  CircleField v1 = derivative(v, 1);
  CircleField rp = derivative(alpha_curvature(m), 1);
  double worst = 0.0;
  for (int j = 0; j < u.size(); ++j) {
    double res = v3[j] + v1[j] - 0.5 * rp[j] / (u[j] * u[j]);
    worst = std::max(worst, std::abs(res));
  }
  return worst;
}

double harnack_ratio(const ConformalMetric& m) {
  CircleField up = derivative(m.u, 1);
  double worst = 0.0;
  for (int j = 0; j < m.u.size(); ++j)
    worst = std::max(worst, std::abs(up[j]) / m.u[j]);
  return worst;
}

double kappa_sigma_energy(const ConformalMetric& m) {
  CircleField rp = derivative(alpha_curvature(m), 1);
  double sum = 0.0;
  for (int j = 0; j < m.u.size(); ++j)
    sum += m.u[j] * m.u[j] * rp[j] * rp[j];
  return kTwoPi / m.u.size() * sum;
}

namespace {

InequalityReport make_report(double value, double bound) {
  double deficit = value - bound;
  return InequalityReport{value, bound, deficit, deficit / std::abs(bound)};
}

}  // namespace

InequalityReport theorem_a_report(const CircleField& u) {
  int n = u.size();
  double ic = 0.0;
  double is = 0.0;
  for (int j = 0; j < n; ++j) {
    double theta = CircleField::grid_point(n, j);
    double w = 1.0 / (u[j] * u[j] * u[j]);
    ic += w * std::cos(theta);
    is += w * std::sin(theta);
  }
  ic *= kTwoPi / n;
  is *= kTwoPi / n;
  if (std::abs(ic) > 1e-8 || std::abs(is) > 1e-8)
    throw std::domain_error(
        "the first inequality needs the mode-1 integrals of u^-3 to vanish; "
        "got (" +
        std::to_string(ic) + ", " + std::to_string(is) + ")");

  CircleField up = derivative(u, 1);
  double dirichlet = integrate(up * up - u * u);
  double length = integrate(pow_field(u, -2.0));
  return make_report(dirichlet * length, -4.0 * kPi * kPi);
}

InequalityReport theorem_b_report(const CircleField& u) {
  CircleField up = derivative(u, 1);
  double dirichlet = integrate(up * up) - 0.25 * integrate(u * u);
  double length = integrate(pow_field(u, -2.0));
  return make_report(dirichlet * length, -kPi * kPi);
}

double ModeAmplitudes::amplitude(int k) const {
  if (k < 1 || k > static_cast<int>(a.size()))
    throw std::out_of_range("mode index outside the report");
  return std::hypot(a[k - 1], b[k - 1]);
}

CurvatureModeReport curvature_mode_amplitudes(const ConformalMetric& m, int n_max) {
  int n = m.u.size();
  if (n_max < 1 || n_max > n / 2 - 1)
    throw std::invalid_argument("n_max must lie in [1, n/2 - 1]");

  CircleField x = deviation_field(m, alpha_curvature(m));
  FourierSpectrum sp = analyze(x);

  CurvatureModeReport out;
  for (int k = 1; k <= n_max; ++k) {
    out.in_theta.a.push_back(sp.a[k]);
    out.in_theta.b.push_back(sp.b[k - 1]);
  }

  SigmaChart chart = sigma_chart(m);
  TrigInterpolant interp(x);
  double length = chart.total_length();
  std::vector<double> resampled(n);
  for (int i = 0; i < n; ++i) {
    double sigma = length * i / n;
    resampled[i] = interp(chart.theta_from_sigma(sigma));
  }
  FourierSpectrum sps = analyze(CircleField(std::move(resampled)));
  for (int k = 1; k <= n_max; ++k) {
    out.in_sigma.a.push_back(sps.a[k]);
    out.in_sigma.b.push_back(sps.b[k - 1]);
  }
  return out;
}

DecayFit fit_decay(std::span<const double> times, std::span<const double> values,
                   double window_lo, double window_hi) {
  if (times.size() != values.size())
    throw std::invalid_argument("times and values must pair up");
  std::vector<double> t;
  std::vector<double> logv;
  for (size_t i = 0; i < times.size(); ++i) {
    if (times[i] < window_lo || times[i] > window_hi) continue;
    if (!(values[i] > 0.0) || !std::isfinite(values[i])) continue;
    t.push_back(times[i]);
    logv.push_back(std::log(values[i]));
  }
  if (t.size() < 10)
    throw std::invalid_argument("decay fit needs at least 10 positive samples in the window");

  double n = static_cast<double>(t.size());
  double st = 0.0, sy = 0.0;
  for (size_t i = 0; i < t.size(); ++i) {
    st += t[i];
    sy += logv[i];
  }
  double tbar = st / n;
  double ybar = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (size_t i = 0; i < t.size(); ++i) {
    double dt = t[i] - tbar;
    double dy = logv[i] - ybar;
    sxx += dt * dt;
    sxy += dt * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0))
    throw std::invalid_argument("decay fit needs a nondegenerate time window");
  double slope = sxy / sxx;
  double residual = syy - slope * sxy;  // sum of squared residuals
  double r2 = syy > 0.0 ? 1.0 - residual / syy : 1.0;
  return DecayFit{-slope, std::exp(ybar - slope * tbar), t.front(), t.back(), r2};
}

}  // namespace cmflow
