#include "cmflow/presets.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "cmflow/circle_field.hpp"
#include "cmflow/flow_engine.hpp"

namespace cmflow {

namespace {

// Orthogonality first (it perturbs the length), then the exact length scale.
ConformalMetric projected(ConformalMetric m) {
  if (m.alpha == 1.0) m = project_orthogonality(m);
  return project_length(m);
}

void check_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("preset lambda must be positive and finite");
}

}  // namespace

ConformalMetric round_state(double alpha, int n) {
  return ConformalMetric(alpha, CircleField::constant(n, 1.0));
}

ConformalMetric perturbed_round(double alpha, int n, int mode,
                                double amplitude) {
  if (mode < 1 || 2 * mode >= n)
    throw std::invalid_argument("perturbation mode " + std::to_string(mode) +
                                " does not fit below the Nyquist frequency " +
                                std::to_string(n / 2));
  if (!(std::abs(amplitude) < 1.0))
    throw std::invalid_argument(
        "perturbation amplitude must lie in (-1, 1) to keep u positive");
  CircleField u = CircleField::from_function(n, [&](double t) {
    return 1.0 + amplitude * std::cos(mode * t);
  });
  return projected(ConformalMetric(alpha, std::move(u)));
}

ConformalMetric theorem_a_extremal(double alpha, int n, double lambda,
                                   double angle) {
  check_lambda(lambda);
  double a = (lambda * lambda + 1.0 / (lambda * lambda)) / 2.0;
  double b = (lambda * lambda - 1.0 / (lambda * lambda)) / 2.0;
  CircleField u = CircleField::from_function(n, [&](double t) {
    return std::sqrt(a + b * std::cos(2.0 * (t - angle)));
  });
  // The family is even in 2(theta - angle), so the mode-1 integrals of u^-3
  // cancel pairwise on any even grid; only the length needs the exact
  // on-grid scale.
  return project_length(ConformalMetric(alpha, std::move(u)));
}

ConformalMetric theorem_b_extremal(double alpha, int n, double lambda,
                                   double angle) {
  check_lambda(lambda);
  double a = (lambda * lambda + 1.0 / (lambda * lambda)) / 2.0;
  double b = (lambda * lambda - 1.0 / (lambda * lambda)) / 2.0;
  CircleField u = CircleField::from_function(n, [&](double t) {
    return std::sqrt(a + b * std::cos(t - angle));
  });
  return projected(ConformalMetric(alpha, std::move(u)));
}

ConformalMetric random_bandlimited(double alpha, int n, int modes,
                                   double amplitude, std::uint64_t seed) {
  if (modes < 1 || 2 * modes >= n)
    throw std::invalid_argument("mode count " + std::to_string(modes) +
                                " does not fit below the Nyquist frequency " +
                                std::to_string(n / 2));
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude))
    throw std::invalid_argument("amplitude must be nonnegative and finite");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-amplitude, amplitude);
  std::vector<double> ac(modes + 1, 0.0), bc(modes + 1, 0.0);
  for (int k = 1; k <= modes; ++k) {
    ac[k] = coef(rng);
    bc[k] = coef(rng);
  }
  CircleField u = CircleField::from_function(n, [&](double t) {
    double v = 1.0;
    for (int k = 1; k <= modes; ++k)
      v += ac[k] * std::cos(k * t) + bc[k] * std::sin(k * t);
    return v;
  });
  if (!(u.min() > 0.0))
    throw std::invalid_argument(
        "random draw lost positivity; lower the amplitude or mode count");
  return projected(ConformalMetric(alpha, std::move(u)));
}

}  // namespace cmflow
