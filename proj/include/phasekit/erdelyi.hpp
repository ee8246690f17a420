#ifndef PHASEKIT_ERDELYI_HPP
#define PHASEKIT_ERDELYI_HPP

#include "phasekit/substitution.hpp"

namespace phasekit {

/// Smooth cut-off: 1 on [p1, p1+eta], 0 on [p2-eta, p2], exponential
/// mollifier transition in between (all derivatives vanish at the junctions).
struct CutoffFamily {
  double p1 = 0.0, p2 = 1.0, eta = 0.25;

  double nu(double p) const {
    double a = p1 + eta, b = p2 - eta;
    if (p <= a) return 1.0;
    if (p >= b) return 0.0;
    double x = (p - a) / (b - a);
    double ea = std::exp(-1.0 / x), eb = std::exp(-1.0 / (1.0 - x));
    return eb / (ea + eb);
  }
};

inline CutoffFamily make_cutoff(const OscillatoryProblem& pr, double eta) {
  if (!(eta > 0.0 && eta < 0.5 * (pr.p2 - pr.p1)))
    throw std::invalid_argument("cutoff: eta must lie in (0, (p2-p1)/2)");
  return CutoffFamily{pr.p1, pr.p2, eta};
}

/// Theta_{n+1}^{(j)}(rho, mu) =
///   ((-1)^{j+1}/(n! rho)) Gamma((n+mu)/rho) e^{(-1)^{j+1} i pi (n+mu)/(2 rho)}.
inline Complex theta_coefficient(int j, int n, double rho, double mu) {
  if (j != 1 && j != 2) throw std::invalid_argument("theta_coefficient: j must be 1 or 2");
  if (n < 0 || !(rho >= 1.0) || !(mu > 0.0 && mu <= 1.0))
    throw std::invalid_argument("theta_coefficient: invalid parameters");
  double sign = (j == 1) ? 1.0 : -1.0;
  double nfact = 1.0;
  for (int k = 2; k <= n; ++k) nfact *= k;
  double a = (n + mu) / rho;
  return sign * gamma_real(a) / (nfact * rho) * cis(sign * pi * 0.5 * a);
}

struct PhiEstimateConstants {
  double a = 0.0, b = 0.0, c = 0.0;
};

/// The two-estimate constants of the ray primitive phi_N^{(j)}(., omega, rho, 1):
///   |phi_N| <= a w^{-N/rho}  (uniform in s)  and
///   |phi_N| <= b w^{-(1+(N-1)/rho)} s^{1-rho} + c w^{-(1+N/rho)} s^{-rho}.
inline PhiEstimateConstants phi_estimate_constants(int N, double rho) {
  if (N < 1 || !(rho >= 1.0)) throw std::invalid_argument("phi_estimate_constants: invalid N or rho");
  double nm1fact = 1.0;
  for (int k = 2; k <= N - 1; ++k) nm1fact *= k;
  PhiEstimateConstants lc;
  lc.a = gamma_real(N / rho) / (nm1fact * rho);
  if (N == 1) {
    lc.b = 1.0 / rho;
    lc.c = (rho - 1.0) * gamma_real(1.0 / rho) / (rho * rho);
  } else {
    double nm2fact = 1.0;
    for (int k = 2; k <= N - 2; ++k) nm2fact *= k;
    lc.b = gamma_real((N - 1.0) / rho) / (rho * rho * nm2fact);
    lc.c = (rho - 1.0) * gamma_real(N / rho) / (rho * rho * nm1fact);
  }
  return lc;
}

struct BalanceConstants {
  double a = 0.0, b = 0.0, c = 0.0;
  double rho = 2.0;
  int N = 1;
  double gamma = 0.5;
  double K_rho = 0.0;  // positive root of a K^rho - b K - c = 0
  double L = 0.0;      // a K_rho^gamma
  double delta = 0.0;  // (gamma + N)/rho
};

/// Balances the two estimates into |f| <= L s^{-gamma} w^{-delta}.
inline BalanceConstants balance(double a, double b, double c, double rho, int N,
                                double gamma) {
  if (!(a > 0.0) || b < 0.0 || c < 0.0)
    throw std::invalid_argument("balance: need a > 0 and b, c >= 0");
  if (!(rho >= 2.0)) throw std::invalid_argument("balance: rho must be >= 2");
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("balance: gamma must be in (0,1)");
  if (!(b > 0.0 || c > 0.0))
    throw std::invalid_argument("balance: b = c = 0 has no positive root");
  BalanceConstants bc;
  bc.a = a;
  bc.b = b;
  bc.c = c;
  bc.rho = rho;
  bc.N = N;
  bc.gamma = gamma;
  double hi = 1.0 + (b + c) / a;
  // c = 0 makes K = 0 a root too; start the bracket strictly inside (0, K+).
  double lo = (c > 0.0) ? 0.0 : std::min(1e-8, 0.5 * std::pow(b / a, 1.0 / (rho - 1.0)));
  bc.K_rho = solve_monotone_root(
      [&](double K) { return a * std::pow(K, rho) - b * K - c; }, lo, hi);
  bc.L = a * std::pow(bc.K_rho, gamma);
  bc.delta = (gamma + N) / rho;
  return bc;
}

struct ExpansionTerm {
  Complex coefficient;    // includes e^{i omega psi(p_j)} once evaluated
  double omega_exponent;  // -(n + mu_j)/rho_j
};

struct RemainderBound {
  double constant = 0.0;
  double omega_exponent = 0.0;
  double value(double omega) const { return constant * std::pow(omega, omega_exponent); }
};

/// One endpoint's share of the smooth cut-off expansion, in omega-free form:
/// the evaluated term is cis(omega * psi_endpoint) * coefficient * omega^e.
struct SideExpansion {
  int side = 1;
  double mu = 1.0, rho = 1.0;
  double psi_endpoint = 0.0;
  std::vector<ExpansionTerm> terms;  // coefficient excludes the endpoint phase
  RemainderBound bound;
  bool refined = false;  // balance-envelope route (mu = 1, rho >= 2)

  Complex evaluate(double omega) const {
    Complex acc(0.0);
    for (const auto& t : terms) acc += t.coefficient * std::pow(omega, t.omega_exponent);
    return cis(omega * psi_endpoint) * acc;
  }
};

struct ErdelyiExpansion {
  SideExpansion side1, side2;
  int N = 1;
  double eta = 0.0;

  Complex evaluate(double omega) const { return side1.evaluate(omega) + side2.evaluate(omega); }
  double bound_total(double omega) const {
    return side1.bound.value(omega) + side2.bound.value(omega);
  }
};

namespace detail {

inline SideExpansion erdelyi_side(const OscillatoryProblem& pr,
                                  const CutoffFamily& cutoff, int side, int N,
                                  double gamma) {
  double q = (side == 1) ? pr.p2 - cutoff.eta : pr.p1 + cutoff.eta;
  Diffeo d = build_diffeo(pr, side, q);
  KFactor k = build_k(pr, d);

  SideExpansion se;
  se.side = side;
  se.mu = k.mu;
  se.rho = d.rho;
  se.psi_endpoint = eval_phase(pr, side == 1 ? pr.p1 : pr.p2, 0);

  for (int n = 0; n < N; ++n) {
    double dk = (n == 0) ? k.at_zero : k_derivative(k, 0.0, n);
    se.terms.push_back({theta_coefficient(side, n, se.rho, se.mu) * dk,
                        -(n + se.mu) / se.rho});
  }

  // nu_j k_j on [0, s_j]: nu_1 = nu(phi^{-1}), nu_2 = (1 - nu)(phi^{-1}).
  auto nu_k = [&](double s) {
    double p = d.inverse(s);
    double n = cutoff.nu(p);
    return ((side == 1) ? n : 1.0 - n) * k(s);
  };
  DerivativeSettings ds;
  ds.interval_length = d.s_max;
  ds.domain_lo = 0.0;
  ds.domain_hi = d.s_max;
  auto dN = [&](double s) { return std::abs(nth_derivative(nu_k, s, N, ds)); };

  // The stencil-sampled integrand carries ~1e-8 relative noise; the floor
  // stops the adaptive splitter from chasing it.
  QuadratureSettings qs;
  qs.rel_tol = 1e-7;
  qs.abs_tol = 1e-12;
  qs.noise_floor_scale = 1e8;
  se.refined = (se.mu == 1.0 && se.rho >= 2.0);
  if (se.refined) {
    PhiEstimateConstants lc = phi_estimate_constants(N, se.rho);
    BalanceConstants bc = balance(lc.a, lc.b, lc.c, se.rho, N, gamma);
    double I = integrate_endpoint_singular(dN, d.s_max, 1.0 - gamma, qs);
    se.bound = {bc.L * I, -bc.delta};
  } else {
    double nm1fact = 1.0;
    for (int j = 2; j <= N - 1; ++j) nm1fact *= j;
    double I = integrate_endpoint_singular(dN, d.s_max, se.mu, qs);
    se.bound = {gamma_real(N / se.rho) / (nm1fact * se.rho) * I, -N / se.rho};
  }
  return se;
}

}  // namespace detail

/// Smooth cut-off expansion to N terms at width eta; sides with mu_j = 1
/// and rho_j >= 2 get the refined balance-envelope remainder bound.
inline ErdelyiExpansion erdelyi_expand(const OscillatoryProblem& pr, int N,
                                       double eta, double gamma = 0.5) {
  if (N < 1 || N > 3) throw std::invalid_argument("erdelyi_expand: N must be 1..3");
  ValidationReport rep = validate_problem(pr);
  if (!rep.ok()) throw std::invalid_argument("erdelyi_expand: invalid problem: " + rep.violations.front());
  CutoffFamily cutoff = make_cutoff(pr, eta);
  ErdelyiExpansion ex;
  ex.N = N;
  ex.eta = eta;
  ex.side1 = detail::erdelyi_side(pr, cutoff, 1, N, gamma);
  ex.side2 = detail::erdelyi_side(pr, cutoff, 2, N, gamma);
  return ex;
}

}  // namespace phasekit

#endif  // PHASEKIT_ERDELYI_HPP
