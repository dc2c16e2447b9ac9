#include "cmflow/flow_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "cmflow/affine_bridge.hpp"
#include "cmflow/diagnostics.hpp"

namespace cmflow {

namespace {

constexpr double kSteadyTolerance = 1e-11;
constexpr double kOrthogonalityTolerance = 1e-10;
constexpr double kTimeSlack = 1e-12;
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// Mean curvature from precomputed R, sharing the quadrature of integrate()
// so length conservation is exact at the semi-discrete level.
double mean_from(const CircleField& r, const CircleField& u) {
  double num = 0.0;
  double den = 0.0;
  for (int j = 0; j < u.size(); ++j) {
    double w = 1.0 / (u[j] * u[j]);
    num += r[j] * w;
    den += w;
  }
  return num / den;
}

double max_deviation(const CircleField& r, double rbar) {
  double dev = 0.0;
  for (int j = 0; j < r.size(); ++j) dev = std::max(dev, std::abs(r[j] - rbar));
  return dev;
}

// Stage factors must stay inside the cone the metric constructor enforces;
// stages themselves are not validated ConformalMetric states.
void check_cone(const CircleField& v, double t) {
  double lo = v.min();
  double hi = v.max();
  if (!(hi > 0.0) || !(lo > 1e-8 * hi))
    throw IntegrationError("conformal factor hit the positivity floor", t, v);
}

// du/dt on a stage factor: 1/4 (R - rbar) u, with rbar dropped for the
// un-normalized flow.
CircleField stage_rhs(double alpha, const CircleField& v, double t, bool normalized) {
  check_cone(v, t);
  CircleField vpp = derivative(v, 2);
  int n = v.size();
  std::vector<double> r(n);
  double num = 0.0;
  double den = 0.0;
  for (int j = 0; j < n; ++j) {
    double vj = v[j];
    double v2 = vj * vj;
    r[j] = v2 * vj * (alpha * vpp[j] + vj);
    double w = 1.0 / v2;
    num += r[j] * w;
    den += w;
  }
  double shift = normalized ? num / den : 0.0;
  for (int j = 0; j < n; ++j) r[j] = 0.25 * (r[j] - shift) * v[j];
  return CircleField(std::move(r));
}

CircleField axpy(const CircleField& u, double c, const CircleField& k) {
  std::vector<double> s(u.size());
  for (int j = 0; j < u.size(); ++j) s[j] = u[j] + c * k[j];
  return CircleField(std::move(s));
}

CircleField project_length_field(const CircleField& u) {
  double length = integrate(pow_field(u, -2.0));
  return std::sqrt(length / kTwoPi) * u;
}

CircleField project_orthogonality_field(const CircleField& u) {
  CircleField w = pow_field(u, -3.0);
  FourierSpectrum s = analyze(w);
  double a1 = s.a[1];
  double b1 = s.b[0];
  int n = u.size();
  std::vector<double> recentered(n);
  for (int j = 0; j < n; ++j) {
    double theta = CircleField::grid_point(n, j);
    recentered[j] = w[j] - a1 * std::cos(theta) - b1 * std::sin(theta);
  }
  CircleField wt(std::move(recentered));
  if (!(wt.min() > 0.0))
    throw std::domain_error(
        "orthogonality projection drives u^-3 non-positive; state left the "
        "convex class");
  return pow_field(wt, -1.0 / 3.0);
}

FlowState step_impl(const FlowState& s, const StepperConfig& cfg, double dt_cap,
                    bool normalized) {
  cfg.validate();
  const CircleField& u = s.metric.u;
  const double alpha = s.metric.alpha;
  const int n = u.size();
  double umax = u.max();
  double dt =
      std::min(cfg.max_dt, cfg.cfl * 8.0 / (alpha * umax * umax * umax * umax *
                                            static_cast<double>(n) * n));
  if (dt_cap > 0.0) dt = std::min(dt, dt_cap);
  if (!(dt > 1e-15)) throw IntegrationError("step size collapsed", s.time, u);

  double rbar0 = mean_from(s.cached_curvature, u);

  CircleField unew = u;
  try {
    // First stage reuses the state's cached curvature.
    std::vector<double> k1v(n);
    double shift = normalized ? rbar0 : 0.0;
    for (int j = 0; j < n; ++j)
      k1v[j] = 0.25 * (s.cached_curvature[j] - shift) * u[j];
    CircleField k1(std::move(k1v));

    CircleField k2 = stage_rhs(alpha, axpy(u, 0.5 * dt, k1), s.time, normalized);
    CircleField k3 = stage_rhs(alpha, axpy(u, 0.5 * dt, k2), s.time, normalized);
    CircleField k4 = stage_rhs(alpha, axpy(u, dt, k3), s.time, normalized);

    std::vector<double> out(n);
    for (int j = 0; j < n; ++j)
      out[j] = u[j] + dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    unew = CircleField(std::move(out));
  } catch (const std::invalid_argument& e) {
    throw IntegrationError(std::string("step produced invalid samples: ") + e.what(),
                           s.time, u);
  }
  check_cone(unew, s.time + dt);

  if (normalized) {
    if (cfg.projection_orthogonality) unew = project_orthogonality_field(unew);
    if (cfg.projection_length) unew = project_length_field(unew);
  }

  ConformalMetric mnew(alpha, std::move(unew));
  CircleField rnew = alpha_curvature(mnew);
  double rbar1 = mean_from(rnew, mnew.u);

  double acc = s.rbar_integral + 0.5 * dt * (rbar0 + rbar1);
  double scale_acc = s.scale_time_integral +
                     0.5 * dt * (std::exp(s.rbar_integral) + std::exp(acc));

  return FlowState{std::move(mnew), s.time + dt,     std::move(rnew),
                   s.step_count + 1, acc, scale_acc};
}

void append_record(TrajectoryRecord& rec, const FlowState& s) {
  const CircleField& u = s.metric.u;
  const CircleField& r = s.cached_curvature;
  int n = u.size();
  double num = 0.0;
  double den = 0.0;
  for (int j = 0; j < n; ++j) {
    double w = 1.0 / (u[j] * u[j]);
    num += r[j] * w;
    den += w;
  }
  double rbar = num / den;
  double f2 = 0.0;
  double f4 = 0.0;
  for (int j = 0; j < n; ++j) {
    double x = r[j] - rbar;
    double w = 1.0 / (u[j] * u[j]);
    f2 += x * x * w;
    f4 += x * x * x * x * w;
  }
  double h = kTwoPi / n;

  rec.times.push_back(s.time);
  rec.rbar.push_back(rbar);
  rec.length.push_back(h * den);
  rec.f2.push_back(h * f2);
  rec.f4.push_back(h * f4);
  rec.umin.push_back(u.min());
  rec.umax.push_back(u.max());

  double area = kNan;
  if (s.metric.alpha == 1.0) {
    auto [ic, is] = orthogonality_integrals(u);
    if (std::hypot(ic, is) <= 1e-6) area = euclidean_area(s.metric);
  }
  rec.area.push_back(area);
  rec.kw_residual.push_back(
      s.metric.alpha == 4.0 ? kazdan_warner_residual(s.metric) : kNan);
  rec.harnack.push_back(harnack_ratio(s.metric));
  rec.rbar_integral.push_back(s.rbar_integral);

  CircleField x = r - CircleField::constant(n, rbar);
  FourierSpectrum sp = analyze(x);
  rec.modes.push_back({sp.a[1], sp.b[0], sp.a[2], sp.b[1], sp.a[3], sp.b[2]});
}

RunResult drive(FlowState state, const StepperConfig& cfg, double t_end, double cadence,
                bool normalized, bool detect_steady) {
  if (!(std::isfinite(t_end)) || t_end < 0.0)
    throw std::invalid_argument("t_end must be finite and nonnegative");
  if (!(cadence > 0.0)) throw std::invalid_argument("cadence must be positive");

  RunResult out;
  append_record(out.record, state);
  out.snapshots.push_back(state);
  double last_recorded = state.time;
  double next_target = std::min(cadence, t_end);

  for (;;) {
    if (detect_steady &&
        max_deviation(state.cached_curvature, mean_from(state.cached_curvature,
                                                        state.metric.u)) <
            kSteadyTolerance) {
      if (state.time > last_recorded + kTimeSlack) {
        append_record(out.record, state);
        out.snapshots.push_back(state);
      }
      out.termination = Termination::Steady;
      return out;
    }
    if (state.time >= t_end - kTimeSlack) {
      if (state.time > last_recorded + kTimeSlack) {
        append_record(out.record, state);
        out.snapshots.push_back(state);
      }
      return out;
    }
    state = step_impl(state, cfg, next_target - state.time, normalized);
    if (state.time >= next_target - kTimeSlack) {
      append_record(out.record, state);
      out.snapshots.push_back(state);
      last_recorded = state.time;
      next_target = std::min(next_target + cadence, t_end);
    }
  }
}

}  // namespace

void StepperConfig::validate() const {
  if (!(cfl > 0.0) || cfl > 1.0)
    throw std::invalid_argument("cfl must lie in (0, 1]");
  if (!(max_dt > 0.0) || !std::isfinite(max_dt))
    throw std::invalid_argument("max_dt must be positive and finite");
}

FlowState FlowState::initial(ConformalMetric m) {
  CircleField r = alpha_curvature(m);
  return FlowState{std::move(m), 0.0, std::move(r), 0, 0.0, 0.0};
}

IntegrationError::IntegrationError(const std::string& what_arg, double t, CircleField u)
    : std::runtime_error(what_arg + " (t = " + std::to_string(t) + ")"),
      time(t),
      u_snapshot(std::move(u)) {}

FlowState step_normalized(const FlowState& s, const StepperConfig& cfg, double dt_cap) {
  return step_impl(s, cfg, dt_cap, true);
}

FlowState step_unnormalized(const FlowState& s, const StepperConfig& cfg,
                            double dt_cap) {
  return step_impl(s, cfg, dt_cap, false);
}

ConformalMetric project_length(const ConformalMetric& m) {
  return ConformalMetric(m.alpha, project_length_field(m.u));
}

ConformalMetric project_orthogonality(const ConformalMetric& m) {
  if (m.alpha != 1.0)
    throw std::domain_error("orthogonality projection applies to alpha = 1 metrics");
  return ConformalMetric(m.alpha, project_orthogonality_field(m.u));
}

std::pair<double, double> orthogonality_integrals(const CircleField& u) {
  int n = u.size();
  double ic = 0.0;
  double is = 0.0;
  for (int j = 0; j < n; ++j) {
    double theta = CircleField::grid_point(n, j);
    double w = 1.0 / (u[j] * u[j] * u[j]);
    ic += w * std::cos(theta);
    is += w * std::sin(theta);
  }
  double h = kTwoPi / n;
  return {h * ic, h * is};
}

RunResult run(const ConformalMetric& initial, const StepperConfig& cfg, double t_end,
              double cadence) {
  cfg.validate();
  ConformalMetric start = initial;
  if (start.alpha == 1.0) {
    if (cfg.projection_orthogonality) {
      start = project_orthogonality(start);
    } else {
      auto [ic, is] = orthogonality_integrals(start.u);
      if (std::hypot(ic, is) > kOrthogonalityTolerance)
        throw std::invalid_argument(
            "affine flow requires the mode-1 integrals of u^-3 to vanish "
            "(defect " +
            std::to_string(std::hypot(ic, is)) + "); enable the projection");
    }
  }
  if (cfg.projection_length) start = project_length(start);
  return drive(FlowState::initial(std::move(start)), cfg, t_end, cadence, true, true);
}

RunResult run_unnormalized(const ConformalMetric& initial, const StepperConfig& cfg,
                           double t_end, double cadence, bool cap_horizon) {
  cfg.validate();
  FlowState state = FlowState::initial(initial);
  double capped = t_end;
  if (cap_horizon) {
    double rmax = state.cached_curvature.max();
    if (rmax > 0.0) capped = std::min(t_end, 0.9 / rmax);
  }
  RunResult out = drive(std::move(state), cfg, capped, cadence, false, false);
  if (capped < t_end) out.termination = Termination::Horizon;
  return out;
}

NormalizedImage normalize_trajectory(const RunResult& raw) {
  if (raw.snapshots.empty())
    throw std::invalid_argument("normalize_trajectory needs a recorded trajectory");
  double l0 = arc_length(raw.snapshots.front().metric);
  double c = (kTwoPi * kTwoPi) / (l0 * l0);

  NormalizedImage img;
  double prev = -std::numeric_limits<double>::infinity();
  for (const FlowState& s : raw.snapshots) {
    double scale = c * std::exp(s.rbar_integral);
    double that = c * s.scale_time_integral;
    if (!(that > prev))
      throw std::runtime_error("normalized time failed to increase");
    prev = that;
    double factor = std::pow(scale, -0.25);
    img.times.push_back(that);
    img.metrics.emplace_back(s.metric.alpha, factor * s.metric.u);
  }
  return img;
}

}  // namespace cmflow
