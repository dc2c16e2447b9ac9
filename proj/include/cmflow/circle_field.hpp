// circle_field.hpp — periodic scalar fields on the uniform grid theta_j = 2*pi*j/n
// and their spectral calculus (differentiation, quadrature, trigonometric
// interpolation, real Fourier analysis/synthesis).
//
// Conventions used throughout:
//   * n is even and >= 8; the grid never stores the duplicate point theta = 2*pi.
//   * integrate() is the uniform rectangle rule (2*pi/n) * sum, which is exact
//     for trigonometric polynomials below the Nyquist frequency.
//   * derivative() acts in Fourier space; the Nyquist cosine mode has no
//     resolvable odd derivative on the grid, so odd orders send it to zero.
//   * analyze() returns cosine coefficients a_0..a_{n/2} and sine coefficients
//     b_1..b_{n/2-1} (stored as b[0]..b[n/2-2]) of
//       f(theta) = sum_k a_k cos(k theta) + b_k sin(k theta).

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cmflow {

inline constexpr double kTwoPi = 6.28318530717958647692528676655900577;
inline constexpr double kPi = 3.14159265358979323846264338327950288;

class CircleField {
 public:
  // Takes ownership of the samples; size must be even and >= 8, entries finite.
  explicit CircleField(std::vector<double> samples);

  static CircleField constant(int n, double value);

  template <typename F>
  static CircleField from_function(int n, F&& f) {
    std::vector<double> s(check_size(n));
    for (int j = 0; j < n; ++j) s[j] = f(grid_point(n, j));
    return CircleField(std::move(s));
  }

  int size() const { return static_cast<int>(samples_.size()); }
  double operator[](int j) const { return samples_[j]; }
  double& operator[](int j) { return samples_[j]; }
  const std::vector<double>& samples() const { return samples_; }

  // theta_j exactly as the grid defines it; all on-grid comparisons must use
  // this expression so that bitwise equality is meaningful.
  static double grid_point(int n, int j) { return (kTwoPi * j) / n; }
  double grid_point(int j) const { return grid_point(size(), j); }

  double min() const;
  double max() const;

 private:
  static int check_size(int n);
  std::vector<double> samples_;
};

// Real trigonometric coefficients of a field at some even resolution n:
// a has n/2 + 1 entries (modes 0..n/2), b has n/2 - 1 entries (modes 1..n/2-1).
struct FourierSpectrum {
  std::vector<double> a;
  std::vector<double> b;

  int grid_size() const { return 2 * (static_cast<int>(a.size()) - 1); }
  // Highest mode carrying a nonzero coefficient; 0 for a constant.
  int highest_mode() const;
};

// Pointwise combinators. Fields must share a grid size.
CircleField apply(const CircleField& f, const std::function<double(double)>& op);
CircleField combine(const CircleField& f, const CircleField& g,
                    const std::function<double(double, double)>& op);

CircleField operator+(const CircleField& f, const CircleField& g);
CircleField operator-(const CircleField& f, const CircleField& g);
CircleField operator*(const CircleField& f, const CircleField& g);
CircleField operator*(double c, const CircleField& f);

// Spectral derivative of the given order (order >= 1).
CircleField derivative(const CircleField& f, int order);

// (2*pi/n) * sum of samples.
double integrate(const CircleField& f);
double mean(const CircleField& f);

FourierSpectrum analyze(const CircleField& f);

// Evaluates the coefficient sum on the grid of size n. Rejects spectra whose
// nonzero content cannot be represented at resolution n (n < 2 * highest mode).
CircleField synthesize(const FourierSpectrum& s, int n);

// analyze + zero-pad/truncate + synthesize. Truncation drops modes at and
// above the target Nyquist frequency.
CircleField resample(const CircleField& f, int n);

// Band-limited interpolant of a field, reusable across many evaluation points.
// Evaluation at a point bitwise-equal to a grid point returns the sample.
class TrigInterpolant {
 public:
  explicit TrigInterpolant(const CircleField& f);
  double operator()(double theta) const;

 private:
  std::vector<double> samples_;
  FourierSpectrum spectrum_;
  int n_;
};

double evaluate_at(const CircleField& f, double theta);
std::vector<double> evaluate_at(const CircleField& f, std::span<const double> thetas);

// Cumulative integral F(theta) = int_0^theta f, split as
// F(theta) = slope * theta + periodic(theta) with slope = mean(f) and F(0) = 0.
// values holds F at the grid points; F(2*pi) = slope * 2*pi = integrate(f).
struct CumulativeIntegral {
  CircleField values;
  double slope;
};
CumulativeIntegral cumulative_integral(const CircleField& f);

}  // namespace cmflow
