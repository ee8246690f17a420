#ifndef PHASEKIT_TYPES_HPP
#define PHASEKIT_TYPES_HPP

#include <complex>
#include <functional>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace phasekit {

using Complex = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846264338327950288;

/// Unit complex number e^{i*phi}.
inline Complex cis(double phi) { return Complex(std::cos(phi), std::sin(phi)); }

/// A scalar function together with its derivatives: eval(p, n) returns the
/// n-th derivative at p. Polynomial-backed instances are exact for every n.
struct SmoothFn {
  std::function<double(double, int)> eval;
  int max_order = 64;

  double operator()(double p, int n = 0) const { return eval(p, n); }

  static SmoothFn constant(double c) {
    return SmoothFn{[c](double, int n) { return n == 0 ? c : 0.0; },
                    std::numeric_limits<int>::max()};
  }

  /// coeffs[k] multiplies p^k.
  static SmoothFn polynomial(std::vector<double> coeffs) {
    return SmoothFn{
        [coeffs = std::move(coeffs)](double p, int n) {
          double v = 0.0;
          for (std::size_t k = coeffs.size(); k-- > 0;) {
            if (static_cast<int>(k) < n) break;
            double fall = 1.0;  // k*(k-1)*...*(k-n+1)
            for (int j = 0; j < n; ++j) fall *= static_cast<double>(k - j);
            v = v * p + coeffs[k] * fall;
          }
          return v;
        },
        std::numeric_limits<int>::max()};
  }
};

struct QuadratureSettings {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_subdivisions = 20000;
  // Relative size of the integrand's own evaluation noise in units of
  // machine epsilon; oscillatory kernels set this to ~ omega * |phase|
  // because the phase argument is rounded before the complex exponential.
  double noise_floor_scale = 1.0;
};

/// Step control for nth_derivative. base_step == 0 selects the default
/// interval-scaled step. domain_lo/hi trigger one-sided stencils near ends.
struct DerivativeSettings {
  double base_step = 0.0;
  int richardson_levels = 3;
  double interval_length = 1.0;
  double domain_lo = -std::numeric_limits<double>::infinity();
  double domain_hi = std::numeric_limits<double>::infinity();
};

/// Thrown when the adaptive quadrature runs out of subdivisions; carries the
/// best estimate reached and its error guess.
class QuadratureBudgetError : public std::runtime_error {
 public:
  QuadratureBudgetError(Complex estimate, double error_estimate)
      : std::runtime_error("quadrature subdivision budget exhausted"),
        estimate(estimate),
        error_estimate(error_estimate) {}
  Complex estimate;
  double error_estimate;
};

}  // namespace phasekit

#endif  // PHASEKIT_TYPES_HPP
