#include "cmflow/circle_field.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstring>
#include <map>
#include <mutex>
#include <numeric>

namespace cmflow {

namespace {

// One forward (r2c) and one inverse (c2r) plan per grid size, with owned
// scratch buffers so alignment is whatever FFTW planned for. Plan creation
// goes through the global planner, which is not thread-safe; execution on the
// thread-local scratch is. FFTW_ESTIMATE keeps planning deterministic.
struct PlanSet {
  int n = 0;
  fftw_plan fwd = nullptr;
  fftw_plan inv = nullptr;
  double* rbuf = nullptr;
  fftw_complex* cbuf = nullptr;
};

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

PlanSet& plans_for(int n) {
  thread_local std::map<int, PlanSet> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  PlanSet p;
  p.n = n;
  p.rbuf = fftw_alloc_real(n);
  p.cbuf = fftw_alloc_complex(n / 2 + 1);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    p.fwd = fftw_plan_dft_r2c_1d(n, p.rbuf, p.cbuf, FFTW_ESTIMATE);
    p.inv = fftw_plan_dft_c2r_1d(n, p.cbuf, p.rbuf, FFTW_ESTIMATE);
  }
  return cache.emplace(n, p).first->second;
}

}  // namespace

int CircleField::check_size(int n) {
  if (n < 8 || n % 2 != 0) {
    throw std::invalid_argument("CircleField: grid size must be even and >= 8, got " +
                                std::to_string(n));
  }
  return n;
}

CircleField::CircleField(std::vector<double> samples) : samples_(std::move(samples)) {
  check_size(static_cast<int>(samples_.size()));
  for (double v : samples_) {
    if (!std::isfinite(v)) throw std::invalid_argument("CircleField: non-finite sample");
  }
}

CircleField CircleField::constant(int n, double value) {
  check_size(n);
  return CircleField(std::vector<double>(n, value));
}

double CircleField::min() const { return *std::min_element(samples_.begin(), samples_.end()); }
double CircleField::max() const { return *std::max_element(samples_.begin(), samples_.end()); }

CircleField apply(const CircleField& f, const std::function<double(double)>& op) {
  std::vector<double> s(f.size());
  for (int j = 0; j < f.size(); ++j) s[j] = op(f[j]);
  return CircleField(std::move(s));
}

CircleField combine(const CircleField& f, const CircleField& g,
                    const std::function<double(double, double)>& op) {
  if (f.size() != g.size()) throw std::invalid_argument("combine: grid size mismatch");
  std::vector<double> s(f.size());
  for (int j = 0; j < f.size(); ++j) s[j] = op(f[j], g[j]);
  return CircleField(std::move(s));
}

CircleField operator+(const CircleField& f, const CircleField& g) {
  return combine(f, g, [](double x, double y) { return x + y; });
}
CircleField operator-(const CircleField& f, const CircleField& g) {
  return combine(f, g, [](double x, double y) { return x - y; });
}
CircleField operator*(const CircleField& f, const CircleField& g) {
  return combine(f, g, [](double x, double y) { return x * y; });
}
CircleField operator*(double c, const CircleField& f) {
  return apply(f, [c](double x) { return c * x; });
}

int FourierSpectrum::highest_mode() const {
  int hi = 0;
  for (int k = static_cast<int>(a.size()) - 1; k >= 1; --k) {
    if (a[k] != 0.0) { hi = k; break; }
  }
  for (int k = static_cast<int>(b.size()); k >= 1; --k) {
    if (b[k - 1] != 0.0) { hi = std::max(hi, k); break; }
  }
  return hi;
}

CircleField derivative(const CircleField& f, int order) {
  if (order < 1) throw std::invalid_argument("derivative: order must be >= 1");
  const int n = f.size();
  PlanSet& p = plans_for(n);
  std::memcpy(p.rbuf, f.samples().data(), n * sizeof(double));
  fftw_execute(p.fwd);

  // Multiply mode k by (i k)^order. i^order cycles with period 4.
  const int half = n / 2;
  p.cbuf[0][0] = 0.0;
  p.cbuf[0][1] = 0.0;
  for (int k = 1; k < half; ++k) {
    const double mag = std::pow(static_cast<double>(k), order);
    double re = p.cbuf[k][0] * mag;
    double im = p.cbuf[k][1] * mag;
    switch (order & 3) {
      case 0: p.cbuf[k][0] = re;  p.cbuf[k][1] = im;  break;
      case 1: p.cbuf[k][0] = -im; p.cbuf[k][1] = re;  break;
      case 2: p.cbuf[k][0] = -re; p.cbuf[k][1] = -im; break;
      case 3: p.cbuf[k][0] = im;  p.cbuf[k][1] = -re; break;
    }
  }
  if (order % 2 == 1) {
    // The Nyquist cosine has no odd derivative visible on the grid.
    p.cbuf[half][0] = 0.0;
    p.cbuf[half][1] = 0.0;
  } else {
    const double mag = std::pow(static_cast<double>(half), order);
    const double sign = (order % 4 == 0) ? 1.0 : -1.0;
    p.cbuf[half][0] *= sign * mag;
    p.cbuf[half][1] = 0.0;
  }

  fftw_execute(p.inv);
  std::vector<double> out(n);
  const double scale = 1.0 / n;
  for (int j = 0; j < n; ++j) out[j] = p.rbuf[j] * scale;
  return CircleField(std::move(out));
}

double integrate(const CircleField& f) {
  double s = std::accumulate(f.samples().begin(), f.samples().end(), 0.0);
  return s * (kTwoPi / f.size());
}

double mean(const CircleField& f) { return integrate(f) / kTwoPi; }

FourierSpectrum analyze(const CircleField& f) {
  const int n = f.size();
  const int half = n / 2;
  PlanSet& p = plans_for(n);
  std::memcpy(p.rbuf, f.samples().data(), n * sizeof(double));
  fftw_execute(p.fwd);

  FourierSpectrum s;
  s.a.resize(half + 1);
  s.b.resize(half - 1);
  s.a[0] = p.cbuf[0][0] / n;
  for (int k = 1; k < half; ++k) {
    s.a[k] = 2.0 * p.cbuf[k][0] / n;
    s.b[k - 1] = -2.0 * p.cbuf[k][1] / n;
  }
  s.a[half] = p.cbuf[half][0] / n;
  return s;
}

CircleField synthesize(const FourierSpectrum& s, int n) {
  if (n < 8 || n % 2 != 0) {
    throw std::invalid_argument("synthesize: grid size must be even and >= 8");
  }
  const int hi = s.highest_mode();
  if (n < 2 * hi) {
    throw std::invalid_argument("synthesize: resolution " + std::to_string(n) +
                                " cannot represent retained mode " + std::to_string(hi));
  }
  const int half = n / 2;
  PlanSet& p = plans_for(n);
  for (int k = 0; k <= half; ++k) {
    p.cbuf[k][0] = 0.0;
    p.cbuf[k][1] = 0.0;
  }
  const int a_max = std::min(half, static_cast<int>(s.a.size()) - 1);
  p.cbuf[0][0] = s.a[0];
  for (int k = 1; k <= a_max; ++k) {
    if (k < half) {
      p.cbuf[k][0] = 0.5 * s.a[k];
    } else {
      p.cbuf[half][0] = s.a[k];  // cos(n/2 * theta_j) = (-1)^j carries full weight
    }
  }
  const int b_max = std::min(half - 1, static_cast<int>(s.b.size()));
  for (int k = 1; k <= b_max; ++k) {
    p.cbuf[k][1] -= 0.5 * s.b[k - 1];
  }
  fftw_execute(p.inv);
  return CircleField(std::vector<double>(p.rbuf, p.rbuf + n));
}

CircleField resample(const CircleField& f, int n) {
  FourierSpectrum s = analyze(f);
  const int half = n / 2;
  // Truncation drops content the target grid cannot carry.
  if (static_cast<int>(s.a.size()) - 1 > half) s.a.resize(half + 1);
  if (static_cast<int>(s.b.size()) > half - 1) s.b.resize(half - 1);
  if (static_cast<int>(s.a.size()) - 1 == half && f.size() != n) s.a[half] = 0.0;
  return synthesize(s, n);
}

TrigInterpolant::TrigInterpolant(const CircleField& f)
    : samples_(f.samples()), spectrum_(analyze(f)), n_(f.size()) {}

double TrigInterpolant::operator()(double theta) const {
  // Bitwise match against the grid keeps on-grid evaluation exact.
  const double h = kTwoPi / n_;
  const long long j = std::llround(theta / h);
  if (j >= 0 && j < n_ && theta == CircleField::grid_point(n_, static_cast<int>(j))) {
    return samples_[static_cast<int>(j)];
  }
  const double r = std::remainder(theta, kTwoPi);
  const int half = n_ / 2;
  double acc = spectrum_.a[0];
  for (int k = 1; k < half; ++k) {
    acc += spectrum_.a[k] * std::cos(k * r) + spectrum_.b[k - 1] * std::sin(k * r);
  }
  acc += spectrum_.a[half] * std::cos(half * r);
  return acc;
}

double evaluate_at(const CircleField& f, double theta) {
  return TrigInterpolant(f)(theta);
}

std::vector<double> evaluate_at(const CircleField& f, std::span<const double> thetas) {
  TrigInterpolant interp(f);
  std::vector<double> out(thetas.size());
  for (size_t i = 0; i < thetas.size(); ++i) out[i] = interp(thetas[i]);
  return out;
}

CumulativeIntegral cumulative_integral(const CircleField& f) {
  FourierSpectrum s = analyze(f);
  const double slope = s.a[0];
  // Mode k integrates to (a_k/k) sin - (b_k/k) cos; the Nyquist cosine
  // integrates to a sine invisible on the grid and is dropped.
  FourierSpectrum anti;
  anti.a.assign(s.a.size(), 0.0);
  anti.b.assign(s.b.size(), 0.0);
  for (size_t k = 1; k < s.b.size() + 1; ++k) {
    anti.a[k] = -s.b[k - 1] / static_cast<double>(k);
    anti.b[k - 1] = s.a[k] / static_cast<double>(k);
  }
  CircleField periodic = synthesize(anti, f.size());
  const double at_zero = periodic[0];
  std::vector<double> vals(f.size());
  for (int j = 0; j < f.size(); ++j) {
    vals[j] = slope * f.grid_point(j) + (periodic[j] - at_zero);
  }
  return CumulativeIntegral{CircleField(std::move(vals)), slope};
}

}  // namespace cmflow
