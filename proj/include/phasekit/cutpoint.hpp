#ifndef PHASEKIT_CUTPOINT_HPP
#define PHASEKIT_CUTPOINT_HPP

#include "phasekit/erdelyi.hpp"

namespace phasekit {

/// One endpoint's share of the cut-point expansion. A^{(j)} does
/// not depend on q; the two remainder bounds do.
struct CutpointSide {
  int side = 1;
  double mu = 1.0, rho = 1.0;
  double psi_endpoint = 0.0;
  Complex a_coefficient;    // k_j(0) * Theta^{(j)}; endpoint phase applied at evaluation
  double a_omega_exponent;  // -mu_j/rho_j
  RemainderBound r1;        // exponent -1/rho_j, or -delta when refined
  RemainderBound r2;        // exponent -(1 + 1/rho_j)
  bool refined = false;

  Complex evaluate(double omega) const {
    return cis(omega * psi_endpoint) * a_coefficient * std::pow(omega, a_omega_exponent);
  }
  double bound(double omega) const { return r1.value(omega) + r2.value(omega); }
};

struct CutpointExpansion {
  CutpointSide s1, s2;
  double q = 0.0;

  Complex evaluate(double omega) const { return s1.evaluate(omega) + s2.evaluate(omega); }
  double bound_total(double omega) const { return s1.bound(omega) + s2.bound(omega); }
};

/// R_2^{(j)} constant: ((rho_j - mu_j)/rho_j) Gamma(1/rho_j)
///   |U(q) phi_j'(q)^{-1}| phi_j(q)^{-rho_j}.
inline double r2_bound_constant(const OscillatoryProblem& pr, double q, int side) {
  Diffeo d = build_diffeo(pr, side, q);
  double mu = (side == 1) ? pr.amplitude.mu1 : pr.amplitude.mu2;
  double Uq = eval_amplitude(pr, q);
  return (d.rho - mu) / d.rho * gamma_real(1.0 / d.rho) *
         std::abs(Uq / d.forward_deriv(q)) * std::pow(d.s_max, -d.rho);
}

namespace detail {

inline CutpointSide cutpoint_side(const OscillatoryProblem& pr, double q,
                                  int side, double gamma) {
  Diffeo d = build_diffeo(pr, side, q);
  KFactor k = build_k(pr, d);

  CutpointSide cs;
  cs.side = side;
  cs.mu = k.mu;
  cs.rho = d.rho;
  cs.psi_endpoint = eval_phase(pr, side == 1 ? pr.p1 : pr.p2, 0);
  cs.a_coefficient = theta_coefficient(side, 0, cs.rho, cs.mu) * k.at_zero;
  cs.a_omega_exponent = -cs.mu / cs.rho;

  auto dk1 = [&](double s) { return std::abs(k_derivative(k, s, 1)); };
  QuadratureSettings qs;
  qs.rel_tol = 1e-8;
  qs.abs_tol = 1e-13;
  qs.noise_floor_scale = 1e6;  // stencil noise of (k_j)' samples
  cs.refined = (cs.mu == 1.0 && cs.rho >= 2.0);
  if (cs.refined) {
    PhiEstimateConstants lc = phi_estimate_constants(1, cs.rho);
    BalanceConstants bc = balance(lc.a, lc.b, lc.c, cs.rho, 1, gamma);
    double I = integrate_endpoint_singular(dk1, d.s_max, 1.0 - gamma, qs);
    cs.r1 = {bc.L * I, -bc.delta};
  } else {
    double I = integrate_endpoint_singular(dk1, d.s_max, cs.mu, qs);
    cs.r1 = {gamma_real(1.0 / cs.rho) / cs.rho * I, -1.0 / cs.rho};
  }
  cs.r2 = {r2_bound_constant(pr, q, side), -(1.0 + 1.0 / cs.rho)};
  return cs;
}

}  // namespace detail

/// Lossless expansion with the characteristic-function split at q. Sides
/// with mu_j = 1 and rho_j >= 2 get the refined balance-envelope R_1 bound.
inline CutpointExpansion expand_cutpoint(const OscillatoryProblem& pr, double q,
                                         double gamma = 0.5) {
  ValidationReport rep = validate_problem(pr);
  if (!rep.ok())
    throw std::invalid_argument("expand_cutpoint: invalid problem: " + rep.violations.front());
  if (!(q > pr.p1 && q < pr.p2))
    throw std::invalid_argument("expand_cutpoint: q must be interior");
  CutpointExpansion ex;
  ex.q = q;
  ex.s1 = detail::cutpoint_side(pr, q, 1, gamma);
  ex.s2 = detail::cutpoint_side(pr, q, 2, gamma);
  return ex;
}

}  // namespace phasekit

#endif  // PHASEKIT_CUTPOINT_HPP
