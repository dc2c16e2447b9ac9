#include "cmflow/affine_bridge.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cmflow {

namespace {

void require_affine(const ConformalMetric& m, const char* who) {
  if (m.alpha != 1.0)
    throw std::domain_error(std::string(who) + " applies to alpha = 1 metrics");
}

// Periodic parts of the cumulative integrals of u^-3 cos and u^-3 sin. The
// slopes are the (scaled) mode-1 integrals; for orthogonal states they vanish
// and the curve closes.
struct CurveIntegrals {
  CumulativeIntegral x;
  CumulativeIntegral y;
};

CurveIntegrals curve_integrals(const CircleField& w) {
  int n = w.size();
  std::vector<double> wc(n);
  std::vector<double> ws(n);
  for (int j = 0; j < n; ++j) {
    double theta = CircleField::grid_point(n, j);
    wc[j] = w[j] * std::cos(theta);
    ws[j] = w[j] * std::sin(theta);
  }
  return {cumulative_integral(CircleField(std::move(wc))),
          cumulative_integral(CircleField(std::move(ws)))};
}

// h = sin(theta) X - cos(theta) Y built from the periodic parts of X, Y, so
// the result is periodic for any input; it solves h'' + h = u^-3 with the
// mode-1 part of u^-3 removed, which is u^-3 itself on orthogonal states.
CircleField support_from(const CircleField& w, const CurveIntegrals& ci) {
  int n = w.size();
  std::vector<double> h(n);
  for (int j = 0; j < n; ++j) {
    double theta = CircleField::grid_point(n, j);
    double xp = ci.x.values[j] - ci.x.slope * theta;
    double yp = ci.y.values[j] - ci.y.slope * theta;
    h[j] = std::sin(theta) * xp - std::cos(theta) * yp;
  }
  return CircleField(std::move(h));
}

}  // namespace

CurveEmbedding reconstruct_curve(const ConformalMetric& m) {
  require_affine(m, "reconstruct_curve");
  CircleField w = pow_field(m.u, -3.0);
  CurveIntegrals ci = curve_integrals(w);
  int n = w.size();

  std::vector<std::array<double, 2>> points(n);
  for (int j = 0; j < n; ++j) points[j] = {ci.x.values[j], ci.y.values[j]};

  CircleField h = support_from(w, ci);
  double area = 0.5 * integrate(h * w);
  double perimeter = integrate(w);
  double defect = kTwoPi * std::hypot(ci.x.slope, ci.y.slope);
  return CurveEmbedding{std::move(points), std::move(h), area, perimeter, defect};
}

CircleField support_function(const ConformalMetric& m) {
  require_affine(m, "support_function");
  CircleField w = pow_field(m.u, -3.0);
  return support_from(w, curve_integrals(w));
}

double euclidean_area(const ConformalMetric& m) {
  require_affine(m, "euclidean_area");
  auto [ic, is] = orthogonality_integrals(m.u);
  if (std::hypot(ic, is) > 1e-4)
    throw std::domain_error(
        "enclosed area needs the mode-1 integrals of u^-3 to vanish (defect " +
        std::to_string(std::hypot(ic, is)) + ")");
  CircleField w = pow_field(m.u, -3.0);
  return 0.5 * integrate(support_from(w, curve_integrals(w)) * w);
}

std::vector<double> area_ode_residual(const TrajectoryRecord& record) {
  size_t k = record.size();
  if (k < 3)
    throw std::invalid_argument("area residuals need at least 3 snapshots");
  double dt = record.times[1] - record.times[0];
  if (!(dt > 0.0)) throw std::invalid_argument("times must increase");
  for (size_t i = 0; i + 1 < k; ++i) {
    double step = record.times[i + 1] - record.times[i];
    if (std::abs(step - dt) > 1e-9 * dt)
      throw std::invalid_argument("area residuals need a uniform cadence");
  }
  for (size_t i = 0; i < k; ++i)
    if (!std::isfinite(record.area[i]))
      throw std::invalid_argument("trajectory has no recorded area");

  std::vector<double> res(k - 2);
  for (size_t i = 1; i + 1 < k; ++i) {
    double lhs = (record.area[i + 1] - record.area[i - 1]) / (2.0 * dt);
    double rhs = 1.5 * (record.rbar[i] * record.area[i] - kPi);
    res[i - 1] = lhs - rhs;
  }
  return res;
}

namespace {

// 3/4 (kappa_bar h - u + u(0) cos + u'(0) sin), the right side of the
// support-function evolution.
CircleField support_rhs(const FlowState& s) {
  const CircleField& u = s.metric.u;
  int n = u.size();
  CircleField h = support_function(s.metric);
  double kbar = mean_curvature(s.metric);
  double u0 = u[0];
  double up0 = derivative(u, 1)[0];
  std::vector<double> out(n);
  for (int j = 0; j < n; ++j) {
    double theta = CircleField::grid_point(n, j);
    out[j] = 0.75 * (kbar * h[j] - u[j] + u0 * std::cos(theta) + up0 * std::sin(theta));
  }
  return CircleField(std::move(out));
}

}  // namespace

double support_evolution_residual(const FlowState& before, const FlowState& after) {
  require_affine(before.metric, "support_evolution_residual");
  require_affine(after.metric, "support_evolution_residual");
  double dt = after.time - before.time;
  if (!(dt > 0.0))
    throw std::invalid_argument("snapshots must be ordered in time");
  CircleField h1 = support_function(before.metric);
  CircleField h2 = support_function(after.metric);
  CircleField r1 = support_rhs(before);
  CircleField r2 = support_rhs(after);
  double worst = 0.0;
  for (int j = 0; j < h1.size(); ++j) {
    double lhs = (h2[j] - h1[j]) / dt;
    double rhs = 0.5 * (r1[j] + r2[j]);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

namespace {

void check_params(const Sl2Params& p) {
  if (!(p.lambda > 0.0) || !std::isfinite(p.lambda) || !std::isfinite(p.alpha_angle))
    throw std::invalid_argument("sl2 parameters need a positive finite lambda");
}

}  // namespace

double sl2_multiplier(double theta, const Sl2Params& p) {
  check_params(p);
  double c = std::cos(theta - p.alpha_angle);
  double s = std::sin(theta - p.alpha_angle);
  return std::sqrt(p.lambda * c * c + s * s / p.lambda);
}

double sl2_chart(double theta, const Sl2Params& p) {
  check_params(p);
  double psi = theta - p.alpha_angle;
  // Reduce to (-pi, pi], apply the branch-corrected arctan, restore the turn
  // count so the chart is a continuous increasing bijection of the line.
  double k = std::round(psi / kTwoPi);
  double red = psi - kTwoPi * k;
  double branch = std::atan2(std::sin(red) / p.lambda, std::cos(red));
  return p.alpha_angle + kTwoPi * k + branch;
}

ConformalMetric sl2_transform(const ConformalMetric& m, const Sl2Params& p) {
  check_params(p);
  // lambda = 1 acts as the identity for every rotation angle.
  if (p.lambda == 1.0) return m;
  TrigInterpolant interp(m.u);
  int n = m.u.size();
  std::vector<double> out(n);
  for (int j = 0; j < n; ++j) {
    double theta = CircleField::grid_point(n, j);
    out[j] = interp(sl2_chart(theta, p)) * sl2_multiplier(theta, p);
  }
  return ConformalMetric(m.alpha, CircleField(std::move(out)));
}

namespace {

// Perimeter of the transformed curve written over the source samples:
//   l(m, alpha) = int sqrt(lambda sin^2(phi - alpha)
//                          + cos^2(phi - alpha) / lambda) u^-3(phi) dphi,
// lambda = e^m. Gradient and Hessian come from differentiating W = sqrt(A + B)
// under the integral, A = lambda sin^2, B = cos^2 / lambda.
struct ObjectiveEval {
  double value = 0.0;
  double gm = 0.0, ga = 0.0;
  double hmm = 0.0, hma = 0.0, haa = 0.0;
};

ObjectiveEval evaluate_perimeter(const CircleField& w, double logl, double alpha) {
  int n = w.size();
  double lambda = std::exp(logl);
  double li = 1.0 / lambda;
  ObjectiveEval e;
  for (int j = 0; j < n; ++j) {
    double psi = CircleField::grid_point(n, j) - alpha;
    double s = std::sin(psi);
    double c = std::cos(psi);
    double a = lambda * s * s;
    double b = li * c * c;
    double s2 = 2.0 * s * c;
    double c2 = c * c - s * s;
    double wv = std::sqrt(a + b);
    double w3 = wv * wv * wv;
    double diff = a - b;
    double skew = lambda - li;

    double wm = diff / (2.0 * wv);
    double wa = -skew * s2 / (2.0 * wv);
    double wmm = 0.5 * wv - diff * diff / (4.0 * w3);
    double wma = -(lambda + li) * s2 / (2.0 * wv) + diff * skew * s2 / (4.0 * w3);
    double waa = skew * c2 / wv - skew * skew * s2 * s2 / (4.0 * w3);

    e.value += wv * w[j];
    e.gm += wm * w[j];
    e.ga += wa * w[j];
    e.hmm += wmm * w[j];
    e.hma += wma * w[j];
    e.haa += waa * w[j];
  }
  double h = kTwoPi / n;
  e.value *= h;
  e.gm *= h;
  e.ga *= h;
  e.hmm *= h;
  e.hma *= h;
  e.haa *= h;
  return e;
}

}  // namespace

Sl2Normalization sl2_normalize(const ConformalMetric& m) {
  require_affine(m, "sl2_normalize");
  auto [oc, os] = orthogonality_integrals(m.u);
  if (std::hypot(oc, os) > 1e-6)
    throw std::domain_error("sl2_normalize needs an orthogonal state");

  CircleField w = pow_field(m.u, -3.0);
  FourierSpectrum sp = analyze(w);
  double a2 = sp.a[2];
  double b2 = sp.b[1];
  double amp2 = std::hypot(a2, b2);

  // |int e^{2 i theta} (T u)^-3 dtheta| at the given parameters; the quantity
  // the first-order conditions ask to vanish.
  auto criticality = [&](double logl, double alpha) {
    ConformalMetric v =
        sl2_transform(m, Sl2Params{std::exp(logl), alpha});
    CircleField wv = pow_field(v.u, -3.0);
    int n = wv.size();
    double cc = 0.0;
    double cs = 0.0;
    for (int j = 0; j < n; ++j) {
      double theta = CircleField::grid_point(n, j);
      cc += wv[j] * std::cos(2.0 * theta);
      cs += wv[j] * std::sin(2.0 * theta);
    }
    return std::hypot(cc, cs) * kTwoPi / n;
  };

  auto finish = [&](double logl, double alpha, int iters) {
    Sl2Params params{std::exp(logl),
                     alpha - kTwoPi * std::floor(alpha / kTwoPi)};
    ConformalMetric v = sl2_transform(m, params);
    double perimeter = integrate(pow_field(v.u, -3.0));
    return Sl2Normalization{std::move(v), params, perimeter, iters};
  };

  // Mode-2 content at the level of the criticality tolerance: the identity
  // already minimizes to working precision.
  if (kPi * amp2 <= 3e-9) return finish(0.0, 0.0, 0);

  // Start against the mode-2 phase of u^-3; the objective is flat in alpha at
  // lambda = 1, so the damped Newton needs this off-axis seed.
  double alpha = 0.5 * std::atan2(b2, a2);
  double logl = std::clamp(2.0 / 3.0 * amp2 / sp.a[0], 1e-3, 1.0);
  const double log_bound = std::log(1e4);

  ObjectiveEval cur = evaluate_perimeter(w, logl, alpha);
  double mu = 1e-3;
  for (int iter = 1; iter <= 100; ++iter) {
    if (criticality(logl, alpha) <= 1e-9) return finish(logl, alpha, iter - 1);

    double dm = 0.0;
    double da = 0.0;
    for (;;) {
      double h00 = cur.hmm + mu;
      double h11 = cur.haa + mu;
      double det = h00 * h11 - cur.hma * cur.hma;
      if (h00 > 0.0 && det > 0.0) {
        dm = -(h11 * cur.gm - cur.hma * cur.ga) / det;
        da = -(h00 * cur.ga - cur.hma * cur.gm) / det;
        ObjectiveEval next = evaluate_perimeter(w, logl + dm, alpha + da);
        // Near the optimum the objective decrease falls below round-off; a
        // shrinking gradient still certifies progress.
        if (next.value < cur.value ||
            std::hypot(next.gm, next.ga) < std::hypot(cur.gm, cur.ga)) {
          logl += dm;
          alpha += da;
          cur = next;
          mu = std::max(mu / 3.0, 1e-12);
          break;
        }
      }
      mu *= 10.0;
      if (mu > 1e12)
        throw std::runtime_error(
            "perimeter minimization stalled at lambda = " +
            std::to_string(std::exp(logl)) + ", alpha = " + std::to_string(alpha));
    }
    if (std::abs(logl) > log_bound)
      throw std::runtime_error(
          "perimeter minimization degenerated (lambda = " +
          std::to_string(std::exp(logl)) + ")");
  }
  throw std::runtime_error(
      "perimeter minimization did not converge in 100 iterations (lambda = " +
      std::to_string(std::exp(logl)) + ", alpha = " + std::to_string(alpha) + ")");
}

namespace {

// Periodic cubic spline through (x_i, y_i) with period 2 pi in x; the knot
// abscissas must increase strictly within one period. Second derivatives come
// from the cyclic tridiagonal system, solved by rank-one correction of two
// ordinary tridiagonal solves.
class PeriodicSpline {
 public:
  PeriodicSpline(std::vector<double> x, std::vector<double> y)
      : x_(std::move(x)), y_(std::move(y)) {
    size_t n = x_.size();
    std::vector<double> h(n);
    for (size_t i = 0; i < n; ++i) {
      double next = i + 1 < n ? x_[i + 1] : x_[0] + kTwoPi;
      h[i] = next - x_[i];
      if (!(h[i] > 0.0))
        throw std::invalid_argument("spline knots must increase strictly");
    }
    std::vector<double> diag(n), sub(n), sup(n), rhs(n);
    for (size_t i = 0; i < n; ++i) {
      size_t prev = (i + n - 1) % n;
      size_t next = (i + 1) % n;
      sub[i] = h[prev] / 6.0;
      diag[i] = (h[prev] + h[i]) / 3.0;
      sup[i] = h[i] / 6.0;
      rhs[i] = (y_[next] - y_[i]) / h[i] - (y_[i] - y_[prev]) / h[prev];
    }
    m2_ = solve_cyclic(sub, diag, sup, rhs);
    h_ = std::move(h);
  }

  double operator()(double x) const {
    size_t n = x_.size();
    double local = x_[0] + std::fmod(x - x_[0], kTwoPi);
    if (local < x_[0]) local += kTwoPi;
    size_t i = std::upper_bound(x_.begin(), x_.end(), local) - x_.begin();
    i = (i == 0 ? n : i) - 1;
    double xl = x_[i];
    double yl = y_[i];
    double yr = i + 1 < n ? y_[i + 1] : y_[0];
    double ml = m2_[i];
    double mr = i + 1 < n ? m2_[i + 1] : m2_[0];
    double hi = h_[i];
    double t = local - xl;
    double s = hi - t;
    return ml * s * s * s / (6.0 * hi) + mr * t * t * t / (6.0 * hi) +
           (yl / hi - ml * hi / 6.0) * s + (yr / hi - mr * hi / 6.0) * t;
  }

 private:
  static std::vector<double> solve_tridiagonal(std::vector<double> sub,
                                               std::vector<double> diag,
                                               std::vector<double> sup,
                                               std::vector<double> rhs) {
    size_t n = diag.size();
    for (size_t i = 1; i < n; ++i) {
      double f = sub[i] / diag[i - 1];
      diag[i] -= f * sup[i - 1];
      rhs[i] -= f * rhs[i - 1];
    }
    std::vector<double> out(n);
    out[n - 1] = rhs[n - 1] / diag[n - 1];
    for (size_t i = n - 1; i-- > 0;) out[i] = (rhs[i] - sup[i] * out[i + 1]) / diag[i];
    return out;
  }

  static std::vector<double> solve_cyclic(const std::vector<double>& sub,
                                          std::vector<double> diag,
                                          const std::vector<double>& sup,
                                          const std::vector<double>& rhs) {
    size_t n = diag.size();
    double corner_top = sub[0];       // couples row 0 to column n-1
    double corner_bot = sup[n - 1];   // couples row n-1 to column 0
    double gamma = -diag[0];
    diag[0] -= gamma;
    diag[n - 1] -= corner_top * corner_bot / gamma;
    std::vector<double> uvec(n, 0.0);
    uvec[0] = gamma;
    uvec[n - 1] = corner_bot;
    std::vector<double> x = solve_tridiagonal(sub, diag, sup, rhs);
    std::vector<double> z = solve_tridiagonal(sub, diag, sup, uvec);
    double vx = x[0] + corner_top / gamma * x[n - 1];
    double vz = z[0] + corner_top / gamma * z[n - 1];
    double factor = vx / (1.0 + vz);
    std::vector<double> out(n);
    for (size_t i = 0; i < n; ++i) out[i] = x[i] - factor * z[i];
    return out;
  }

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> h_;
  std::vector<double> m2_;
};

}  // namespace

ConformalMetric ingest_polygon(const std::vector<std::array<double, 2>>& vertices,
                               int n) {
  size_t nv = vertices.size();
  if (nv < 16)
    throw std::invalid_argument("polygon ingestion needs at least 16 vertices");

  std::vector<double> ex(nv), ey(nv), len(nv);
  for (size_t i = 0; i < nv; ++i) {
    size_t next = (i + 1) % nv;
    ex[i] = vertices[next][0] - vertices[i][0];
    ey[i] = vertices[next][1] - vertices[i][1];
    len[i] = std::hypot(ex[i], ey[i]);
    if (!(len[i] > 0.0))
      throw std::invalid_argument("polygon has a repeated vertex");
  }

  // Left turns at every vertex make the polygon strictly convex and
  // positively oriented; total turning 2 pi rules out multiple winding.
  double turning = 0.0;
  std::vector<double> turn(nv);
  for (size_t i = 0; i < nv; ++i) {
    size_t next = (i + 1) % nv;
    double cross = ex[i] * ey[next] - ey[i] * ex[next];
    double dot = ex[i] * ex[next] + ey[i] * ey[next];
    if (!(cross / (len[i] * len[next]) > 1e-9))
      throw std::invalid_argument(
          "polygon is not strictly convex and positively oriented");
    turn[i] = std::atan2(cross, dot);
    turning += turn[i];
  }
  if (std::abs(turning - kTwoPi) > 1e-6)
    throw std::invalid_argument("polygon winds more than once (self-intersecting)");

  // Support samples at the vertex normal-cone bisectors. The vertices sit on
  // the body the polygon approximates, so the support value there is exact up
  // to the quadratic normal-direction error; edge normals would pick up the
  // chord sagitta at second order in the edge length instead.
  std::vector<double> nu(nv), hs(nv);
  double edge_angle = std::atan2(-ex[0], ey[0]);
  for (size_t i = 0; i < nv; ++i) {
    double bis = edge_angle + 0.5 * turn[i];
    size_t v = (i + 1) % nv;
    nu[i] = bis;
    hs[i] = vertices[v][0] * std::cos(bis) + vertices[v][1] * std::sin(bis);
    edge_angle += turn[i];
  }

  PeriodicSpline spline(nu, hs);
  std::vector<double> samples(n);
  for (int j = 0; j < n; ++j) samples[j] = spline(CircleField::grid_point(n, j));
  CircleField support(std::move(samples));

  // Santalo-style recentering plus a low-pass. The mode-1 part of the
  // support function is the translation content of the body. The cutoff
  // reflects what a cubic spline fit can support once rho and the scalar
  // curvature each differentiate twice: coefficient noise grows as k^4, so
  // modes beyond ~36 (or beyond a sixth of the knot count) lose more than
  // they add regardless of how dense the polygon is.
  int cutoff = std::min(n / 2 - 1,
                        std::max(8, std::min(static_cast<int>(nv / 6), 36)));
  FourierSpectrum spc = analyze(support);
  spc.a[1] = 0.0;
  spc.b[0] = 0.0;
  for (int k = cutoff + 1; k <= n / 2; ++k) {
    spc.a[k] = 0.0;
    if (k < n / 2) spc.b[k - 1] = 0.0;
  }
  support = synthesize(spc, n);

  CircleField rho = support + derivative(support, 2);
  if (!(rho.min() > 0.0))
    throw std::invalid_argument(
        "fitted support function has nonpositive curvature radius");

  // u(theta) = rho(theta - pi/2)^{-1/3}: the support chart runs over the
  // outer-normal angle, the metric chart over the tangent angle.
  TrigInterpolant rho_interp(rho);
  std::vector<double> us(n);
  for (int j = 0; j < n; ++j)
    us[j] = std::pow(rho_interp(CircleField::grid_point(n, j) - kPi / 2.0), -1.0 / 3.0);

  ConformalMetric metric(1.0, CircleField(std::move(us)));
  return project_length(project_orthogonality(metric));
}

}  // namespace cmflow
