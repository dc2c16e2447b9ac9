// flow_engine.hpp — time integration of the normalized flow
//
//   du/dt = 1/4 (R - R_bar) u        (keeps L = int u^-2 dtheta fixed)
//
// and the un-normalized flow du/dt = 1/4 R u, plus the constraint projections
// and the change of variables that maps an un-normalized trajectory onto the
// normalized one.
//
// Stepping is the classic explicit 4-stage scheme with the diffusive step
// bound dt = min(max_dt, cfl * 8 / (alpha * (max u)^4 * n^2)).

#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cmflow/conformal_metric.hpp"

namespace cmflow {

struct StepperConfig {
  double cfl = 0.25;                    // in (0, 1]
  bool projection_length = false;       // rescale to L = 2 pi after each step
  bool projection_orthogonality = false;  // re-center mode 1 of u^-3 (alpha = 1)
  double max_dt = 1e-2;

  void validate() const;
};

struct FlowState {
  ConformalMetric metric;
  double time = 0.0;
  CircleField cached_curvature;
  long step_count = 0;
  // Trapezoid accumulators along the trajectory; the first drives the lower
  // curvature bound, both drive the un-normalized -> normalized change of
  // variables.
  double rbar_integral = 0.0;       // int_0^t R_bar dtau
  double scale_time_integral = 0.0;  // int_0^t exp(int_0^delta R_bar) ddelta

  static FlowState initial(ConformalMetric m);
};

// Integration failure carries the time and the offending conformal factor.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double time, CircleField u);
  double time;
  CircleField u_snapshot;
};

// One accepted step. dt_cap, when positive, additionally caps the step so the
// driver can land exactly on recording times.
FlowState step_normalized(const FlowState& s, const StepperConfig& cfg, double dt_cap = 0.0);
FlowState step_unnormalized(const FlowState& s, const StepperConfig& cfg, double dt_cap = 0.0);

// Rescales u by sqrt(L / 2 pi) so that arc_length becomes 2 pi. Idempotent.
ConformalMetric project_length(const ConformalMetric& m);

// Removes the two mode-1 coefficients of w = u^-3 and maps back w^-1/3.
// Requires the re-centered w to stay positive. Idempotent.
ConformalMetric project_orthogonality(const ConformalMetric& m);

// Mode-1 integrals of u^-3: (int w cos, int w sin). Both vanish on states
// admissible for the affine flow.
std::pair<double, double> orthogonality_integrals(const CircleField& u);

// Diagnostics recorded along a run, one entry per recorded time. Entries not
// applicable to the flow family hold NaN (area for alpha = 4, the
// Kazdan-Warner residual for alpha = 1).
struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<double> rbar;
  std::vector<double> length;
  std::vector<double> f2;
  std::vector<double> f4;
  std::vector<double> umin;
  std::vector<double> umax;
  std::vector<double> area;
  std::vector<double> kw_residual;
  std::vector<double> harnack;
  std::vector<double> rbar_integral;
  // Signed Fourier coefficients of R - R_bar in theta, frequencies 1..3:
  // a1, b1, a2, b2, a3, b3.
  std::vector<std::array<double, 6>> modes;

  size_t size() const { return times.size(); }
};

enum class Termination { ReachedEnd, Steady, Horizon };

struct RunResult {
  TrajectoryRecord record;
  std::vector<FlowState> snapshots;  // one per recorded time
  Termination termination = Termination::ReachedEnd;
};

// Integrates the normalized flow to t_end, recording every cadence interval
// (and at t_end / termination). Stops early once |R - R_bar|_inf < 1e-11.
// For alpha = 1 the initial data must satisfy the mode-1 condition within
// 1e-10 unless cfg.projection_orthogonality is set, in which case it is
// projected up front.
RunResult run(const ConformalMetric& initial, const StepperConfig& cfg, double t_end,
              double cadence);

// Un-normalized analogue. The curvature grows toward a finite-time horizon;
// unless cap_horizon is false, t_end is capped at 0.9 / max R(0).
RunResult run_unnormalized(const ConformalMetric& initial, const StepperConfig& cfg,
                           double t_end, double cadence, bool cap_horizon = true);

// Maps an un-normalized trajectory onto normalized variables:
//   g_hat(t_hat) = s(t) g(t),  s(t) = (4 pi^2 / L(0)^2) exp(int_0^t R_bar),
//   t_hat(t)     = (4 pi^2 / L(0)^2) int_0^t exp(int_0^delta R_bar) ddelta,
// so u_hat = s^-1/4 u. Returned snapshots carry t_hat as their time.
struct NormalizedImage {
  std::vector<double> times;              // t_hat
  std::vector<ConformalMetric> metrics;   // u_hat
};
NormalizedImage normalize_trajectory(const RunResult& raw);

}  // namespace cmflow
