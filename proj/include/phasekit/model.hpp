#ifndef PHASEKIT_MODEL_HPP
#define PHASEKIT_MODEL_HPP

#include <string>
#include <variant>

#include "phasekit/numerics.hpp"
#include "phasekit/types.hpp"

namespace phasekit {

/// Amplitude U(p) = (p-p1)^{mu1-1} (p2-p)^{mu2-1} u~(p); mu_j in (0,1].
struct AmplitudeSpec {
  double mu1 = 1.0;
  double mu2 = 1.0;
  SmoothFn regular_part = SmoothFn::constant(1.0);
};

/// Phase with psi'(p) = (p-p1)^{rho1-1} (p2-p)^{rho2-1} psi~(p), psi~ > 0.
/// psi itself is reconstructed from psi_p1 by quadrature of psi'.
struct GeneralPhase {
  double rho1 = 1.0;
  double rho2 = 1.0;
  SmoothFn nondegenerate_part = SmoothFn::constant(1.0);
  double psi_p1 = 0.0;
  double psi_p2 = 0.0;
};

/// psi(p) = -(p - p0)^2 + c.
struct QuadraticPhase {
  double p0 = 0.0;
  double c = 0.0;
};

struct PhaseSpec {
  std::variant<GeneralPhase, QuadraticPhase> v;

  bool is_quadratic() const { return std::holds_alternative<QuadraticPhase>(v); }
  const QuadraticPhase& quadratic() const { return std::get<QuadraticPhase>(v); }
  const GeneralPhase& general() const { return std::get<GeneralPhase>(v); }

  static PhaseSpec quadratic(double p0, double c) {
    return PhaseSpec{QuadraticPhase{p0, c}};
  }
  static PhaseSpec general(double rho1, double rho2, SmoothFn psi_tilde,
                           double psi_p1, double psi_p2) {
    return PhaseSpec{GeneralPhase{rho1, rho2, std::move(psi_tilde), psi_p1, psi_p2}};
  }
};

struct OscillatoryProblem {
  double p1 = 0.0;
  double p2 = 1.0;
  AmplitudeSpec amplitude;
  PhaseSpec phase = PhaseSpec::quadratic(1.0, 0.0);
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks every model invariant; failures are reported, never thrown.
inline ValidationReport validate_problem(const OscillatoryProblem& pr) {
  ValidationReport rep;
  auto fail = [&](const std::string& m) { rep.violations.push_back(m); };
  if (!std::isfinite(pr.p1) || !std::isfinite(pr.p2)) fail("interval endpoints must be finite");
  if (!(pr.p1 < pr.p2)) fail("p1 must be strictly less than p2");
  const auto& am = pr.amplitude;
  if (!(am.mu1 > 0.0 && am.mu1 <= 1.0)) fail("mu1 outside (0,1]");
  if (!(am.mu2 > 0.0 && am.mu2 <= 1.0)) fail("mu2 outside (0,1]");
  if (pr.p1 < pr.p2) {
    if (am.mu1 != 1.0 && am.regular_part(pr.p1) == 0.0)
      fail("regular part vanishes at singular endpoint p1");
    if (am.mu2 != 1.0 && am.regular_part(pr.p2) == 0.0)
      fail("regular part vanishes at singular endpoint p2");
  }
  if (pr.phase.is_quadratic()) {
    const auto& q = pr.phase.quadratic();
    if (!std::isfinite(q.p0) || !std::isfinite(q.c)) fail("quadratic phase parameters must be finite");
  } else {
    const auto& g = pr.phase.general();
    if (!(g.rho1 >= 1.0)) fail("rho1 must be >= 1");
    if (!(g.rho2 >= 1.0)) fail("rho2 must be >= 1");
    if (pr.p1 < pr.p2) {
      // Positivity check by sampling on a 64-point Chebyshev grid.
      for (int k = 0; k < 64; ++k) {
        double x = std::cos(pi * (2.0 * k + 1.0) / 128.0);
        double p = 0.5 * (pr.p1 + pr.p2) + 0.5 * (pr.p2 - pr.p1) * x;
        if (!(g.nondegenerate_part(p) > 0.0)) {
          fail("phase nondegenerate part not positive on sampling grid");
          break;
        }
      }
    }
  }
  return rep;
}

/// U(p) for p in (p1, p2); endpoints are admitted only on regular sides.
inline double eval_amplitude(const OscillatoryProblem& pr, double p) {
  const auto& am = pr.amplitude;
  if (p < pr.p1 || p > pr.p2 || (p == pr.p1 && am.mu1 < 1.0) ||
      (p == pr.p2 && am.mu2 < 1.0))
    throw std::domain_error("eval_amplitude: point at or beyond a singular endpoint");
  double v = am.regular_part(p);
  if (am.mu1 != 1.0) v *= std::pow(p - pr.p1, am.mu1 - 1.0);
  if (am.mu2 != 1.0) v *= std::pow(pr.p2 - p, am.mu2 - 1.0);
  return v;
}

/// psi(p) (n = 0) or psi'(p) (n = 1).
inline double eval_phase(const OscillatoryProblem& pr, double p, int n = 0) {
  if (pr.phase.is_quadratic()) {
    const auto& q = pr.phase.quadratic();
    return n == 0 ? -(p - q.p0) * (p - q.p0) + q.c : -2.0 * (p - q.p0);
  }
  const auto& g = pr.phase.general();
  auto dpsi = [&](double x) {
    double v = g.nondegenerate_part(x);
    if (g.rho1 != 1.0) v *= std::pow(x - pr.p1, g.rho1 - 1.0);
    if (g.rho2 != 1.0) v *= std::pow(pr.p2 - x, g.rho2 - 1.0);
    return v;
  };
  if (n == 1) return dpsi(p);
  if (p == pr.p1) return g.psi_p1;
  QuadratureSettings qs;
  qs.rel_tol = 1e-13;
  qs.abs_tol = 1e-15;
  return g.psi_p1 + integrate_adaptive(dpsi, pr.p1, p, qs);
}

/// Endpoint orders (rho1, rho2) and the nondegenerate factor of psi'. For a
/// quadratic phase this depends on where p0 sits relative to the interval;
/// an interior p0 has no admissible factorization (callers split there).
struct PhaseFactorization {
  double rho1 = 1.0;
  double rho2 = 1.0;
  std::function<double(double, int)> psi_tilde;  // (p, derivative order)
};

inline PhaseFactorization phase_factorization(const OscillatoryProblem& pr) {
  if (!pr.phase.is_quadratic()) {
    const auto& g = pr.phase.general();
    return {g.rho1, g.rho2, [f = g.nondegenerate_part](double p, int n) { return f(p, n); }};
  }
  const auto& q = pr.phase.quadratic();
  if (q.p0 == pr.p2)
    return {1.0, 2.0, [](double, int n) { return n == 0 ? 2.0 : 0.0; }};
  if (q.p0 > pr.p2) {
    double p0 = q.p0;
    return {1.0, 1.0,
            [p0](double p, int n) { return n == 0 ? 2.0 * (p0 - p) : (n == 1 ? -2.0 : 0.0); }};
  }
  throw std::invalid_argument(
      "phase_factorization: quadratic stationary point is not at/beyond the right endpoint; "
      "split the interval or mirror the problem first");
}

/// The problem under p -> p1 + p2 - p; the oscillatory integral is unchanged,
/// endpoint roles swap. Used to orient decreasing phases.
inline OscillatoryProblem mirrored(const OscillatoryProblem& pr) {
  OscillatoryProblem m = pr;
  const double p1 = pr.p1, p2 = pr.p2;
  auto reflect = [p1, p2](const SmoothFn& f) {
    return SmoothFn{[f, p1, p2](double p, int n) {
                      double v = f(p1 + p2 - p, n);
                      return (n % 2 == 0) ? v : -v;
                    },
                    f.max_order};
  };
  m.amplitude.mu1 = pr.amplitude.mu2;
  m.amplitude.mu2 = pr.amplitude.mu1;
  m.amplitude.regular_part = reflect(pr.amplitude.regular_part);
  if (pr.phase.is_quadratic()) {
    const auto& q = pr.phase.quadratic();
    m.phase = PhaseSpec::quadratic(p1 + p2 - q.p0, q.c);
  } else {
    const auto& g = pr.phase.general();
    SmoothFn r = reflect(g.nondegenerate_part);
    SmoothFn neg{[r](double p, int n) { return -r(p, n); }, r.max_order};
    m.phase = PhaseSpec::general(g.rho2, g.rho1, neg, g.psi_p2, g.psi_p1);
  }
  return m;
}

}  // namespace phasekit

#endif  // PHASEKIT_MODEL_HPP
