#ifndef PHASEKIT_ORACLE_HPP
#define PHASEKIT_ORACLE_HPP

#include "phasekit/model.hpp"
#include "phasekit/numerics.hpp"

namespace phasekit {

namespace detail {

// Splits [a, b] into panels small enough that omega * (phase variation per
// panel) <= 8*pi, probing the phase at midpoints so interior extrema are seen.
inline void phase_panels(const std::function<double(double)>& phase, double a,
                         double b, double omega, std::vector<double>& cuts,
                         double fa, double fb, int depth) {
  double m = 0.5 * (a + b);
  double fm = phase(m);
  double var = std::abs(fa - fm) + std::abs(fm - fb);
  if (depth >= 48 || omega * var <= 8.0 * pi) {
    cuts.push_back(b);
    return;
  }
  phase_panels(phase, a, m, omega, cuts, fa, fm, depth + 1);
  phase_panels(phase, m, b, omega, cuts, fm, fb, depth + 1);
}

// Integrates f over the panel decomposition of [a, b], refining until the
// summed error estimate meets max(abs_tol, rel_tol*|total|).
template <class F>
Complex integrate_panels(F&& f, const std::function<double(double)>& phase,
                         double a, double b, double omega,
                         const QuadratureSettings& qs) {
  if (a == b) return Complex(0.0);
  std::vector<double> cuts;
  cuts.push_back(a);
  phase_panels(phase, a, b, omega, cuts, phase(a), phase(b), 0);

  const std::size_t n = cuts.size() - 1;
  Complex total(0.0);
  double phase_mag = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    Complex v;
    double e, r;
    gk15<F, Complex>(f, cuts[i], cuts[i + 1], v, e, r);
    total += v;
    phase_mag = std::max(phase_mag, std::abs(phase(cuts[i + 1])));
  }
  for (int pass = 0; pass < 4; ++pass) {
    double target = std::max(qs.abs_tol, qs.rel_tol * std::abs(total));
    QuadratureSettings panel_qs;
    panel_qs.abs_tol = 0.5 * target / static_cast<double>(n);
    panel_qs.rel_tol = 0.0;
    panel_qs.max_subdivisions = qs.max_subdivisions;
    panel_qs.noise_floor_scale =
        std::max(qs.noise_floor_scale, 1.0 + omega * phase_mag);
    Complex refined(0.0);
    for (std::size_t i = 0; i < n; ++i)
      refined += integrate_adaptive(f, cuts[i], cuts[i + 1], panel_qs);
    bool stable = std::abs(refined - total) <= std::max(qs.abs_tol, qs.rel_tol * std::abs(refined));
    total = refined;
    if (stable) break;
  }
  return total;
}

}  // namespace detail

/// Direct numerical evaluation of \int_{p1}^{p2} U(p) e^{i omega psi(p)} dp.
/// Singular endpoints are removed by the power substitution; oscillation is
/// resolved by phase-variation panel splitting before adaptive refinement.
inline Complex oscillatory_integral(const OscillatoryProblem& pr, double omega,
                                    const QuadratureSettings& qs = {}) {
  if (!(omega > 0.0)) throw std::domain_error("oscillatory_integral: omega must be > 0");
  const double p1 = pr.p1, p2 = pr.p2, mid = 0.5 * (p1 + p2);
  const double mu1 = pr.amplitude.mu1, mu2 = pr.amplitude.mu2;
  const SmoothFn& ut = pr.amplitude.regular_part;
  auto psi = [&](double p) { return eval_phase(pr, p, 0); };

  QuadratureSettings half_qs = qs;
  half_qs.abs_tol = 0.5 * qs.abs_tol;
  half_qs.rel_tol = 0.5 * qs.rel_tol;

  // Left half as a function of x = p - p1 with weight x^{mu1-1} absorbed.
  auto left_rest = [&](double x) {
    double p = p1 + x;
    return ut(p) * std::pow(p2 - p, mu2 - 1.0) * cis(omega * psi(p));
  };
  Complex left;
  if (mu1 < 1.0) {
    double inv = 1.0 / mu1;
    auto g = [&](double u) { return left_rest(std::pow(u, inv)) / mu1; };
    auto ph = [&](double u) { return psi(p1 + std::pow(u, inv)); };
    left = detail::integrate_panels(g, ph, 0.0, std::pow(mid - p1, mu1), omega, half_qs);
  } else {
    auto g = [&](double x) { return left_rest(x); };
    auto ph = [&](double x) { return psi(p1 + x); };
    left = detail::integrate_panels(g, ph, 0.0, mid - p1, omega, half_qs);
  }

  // Right half as a function of x = p2 - p.
  auto right_rest = [&](double x) {
    double p = p2 - x;
    return ut(p) * std::pow(p - p1, mu1 - 1.0) * cis(omega * psi(p));
  };
  Complex right;
  if (mu2 < 1.0) {
    double inv = 1.0 / mu2;
    auto g = [&](double u) { return right_rest(std::pow(u, inv)) / mu2; };
    auto ph = [&](double u) { return psi(p2 - std::pow(u, inv)); };
    right = detail::integrate_panels(g, ph, 0.0, std::pow(p2 - mid, mu2), omega, half_qs);
  } else {
    auto g = [&](double x) { return right_rest(x); };
    auto ph = [&](double x) { return psi(p2 - x); };
    right = detail::integrate_panels(g, ph, 0.0, p2 - mid, omega, half_qs);
  }
  return left + right;
}

/// Parameters of the ray primitive phi_{n+1}^{(j)}(s, omega, rho, mu).
struct RaySpec {
  int j = 1;         // ray direction sign (-1)^{j+1}
  double rho = 1.0;  // >= 1
  double mu = 1.0;   // in (0, 1]
  int n = 0;         // phi_{n+1} integrates (z-s)^n
  double s = 0.0;
  double omega = 1.0;
};

/// phi_{n+1}^{(j)}(s,omega,rho,mu) =
///   ((-1)^{n+1}/n!) \int_{Lambda^{(j)}(s)} (z-s)^n z^{mu-1} e^{(-1)^{j+1} i omega z^rho} dz,
/// integrated along the ray z = s + t e^{(-1)^{j+1} i pi/(2 rho)}. The tail
/// beyond T = (45/omega)^{1/rho} is below e^{-45} of the integrand scale.
inline Complex ray_integral(const RaySpec& r, const QuadratureSettings& qs = {}) {
  if (r.j != 1 && r.j != 2) throw std::domain_error("ray_integral: j must be 1 or 2");
  if (!(r.rho >= 1.0)) throw std::domain_error("ray_integral: rho must be >= 1");
  if (!(r.mu > 0.0 && r.mu <= 1.0)) throw std::domain_error("ray_integral: mu must be in (0,1]");
  if (!(r.omega > 0.0)) throw std::domain_error("ray_integral: omega must be > 0");
  if (r.s < 0.0) throw std::domain_error("ray_integral: s must be >= 0");
  if (r.n < 0) throw std::domain_error("ray_integral: n must be >= 0");

  const double sign = (r.j == 1) ? 1.0 : -1.0;
  const double theta = sign * pi / (2.0 * r.rho);
  const Complex dir = cis(theta);
  double nfact = 1.0;
  for (int k = 2; k <= r.n; ++k) nfact *= k;
  const Complex coef = ((r.n % 2 == 0) ? -1.0 : 1.0) / nfact;  // (-1)^{n+1}/n!
  const double T = std::pow(45.0 / r.omega, 1.0 / r.rho);

  if (r.s == 0.0 && r.mu < 1.0) {
    // t = u^{1/mu} absorbs the t^{mu-1} endpoint factor: the integrand
    // becomes (coef/mu) e^{i theta (n+mu)} u^{n/mu} e^{...} du.
    const double inv = 1.0 / r.mu;
    const Complex front = (coef / r.mu) * cis(theta * (r.n + r.mu));
    auto g = [&](double u) {
      Complex z = std::pow(u, inv) * dir;
      Complex expo = Complex(0.0, sign * r.omega) * std::pow(z, r.rho);
      return front * std::pow(u, r.n * inv) * std::exp(expo);
    };
    auto ph = [](double) { return 0.0; };  // pure decay along the ray from 0
    return detail::integrate_panels(g, ph, 0.0, std::pow(T, r.mu), r.omega, qs);
  }

  auto f = [&](double t) {
    Complex z = r.s + t * dir;
    Complex expo = Complex(0.0, sign * r.omega) * std::pow(z, r.rho);
    Complex poly = (r.n == 0) ? Complex(1.0) : std::pow(t, r.n) * cis(theta * r.n);
    return coef * poly * std::pow(z, r.mu - 1.0) * std::exp(expo) * dir;
  };
  auto ph = [&](double t) {
    Complex z = r.s + t * dir;
    return std::real(Complex(sign, 0.0) * std::pow(z, r.rho));
  };
  return detail::integrate_panels(f, ph, 0.0, T, r.omega, qs);
}

/// Closed form of phi_{n+1}^{(j)}(0, omega):
/// ((-1)^{n+1}/n!) e^{(-1)^{j+1} i pi (n+mu)/(2 rho)} (1/rho) Gamma((n+mu)/rho) omega^{-(n+mu)/rho}.
inline Complex phi_zero_closed_form(int j, double rho, double mu, int n, double omega) {
  const double sign = (j == 1) ? 1.0 : -1.0;
  double nfact = 1.0;
  for (int k = 2; k <= n; ++k) nfact *= k;
  double a = (n + mu) / rho;
  double mag = gamma_real(a) / (rho * nfact) * std::pow(omega, -a);
  double par = (n % 2 == 0) ? -1.0 : 1.0;
  return par * mag * cis(sign * pi * 0.5 * a);
}

/// Checks |e^{(-1)^{j+1} i omega (s + t e^{+-i pi/(2 rho)})^rho}| <= e^{-omega t^rho}
/// at every sample, both ray directions (tolerance 1e-12 on exponents).
inline bool ray_decay_check(double rho, double s, double omega,
                                const std::vector<double>& t_samples) {
  for (int j = 1; j <= 2; ++j) {
    double sign = (j == 1) ? 1.0 : -1.0;
    Complex dir = cis(sign * pi / (2.0 * rho));
    for (double t : t_samples) {
      Complex z = s + t * dir;
      // |lhs| = exp(-sign*omega*Im(z^rho)); compare exponents directly.
      double expo = sign * omega * std::imag(std::pow(z, rho));
      double ref = omega * std::pow(t, rho);
      if (expo < ref - 1e-12 * (1.0 + ref)) return false;
    }
  }
  return true;
}

}  // namespace phasekit

#endif  // PHASEKIT_ORACLE_HPP
