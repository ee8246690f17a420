#ifndef PHASEKIT_QUADRATIC_HPP
#define PHASEKIT_QUADRATIC_HPP

#include "phasekit/cutpoint.hpp"

namespace phasekit {

/// Sup-norm of the n-th derivative on [a, b] by dense sampling.
inline double sup_norm(const SmoothFn& f, double a, double b, int n = 0,
                       int samples = 4096) {
  double m = 0.0;
  for (int i = 0; i <= samples; ++i) {
    double p = a + (b - a) * i / samples;
    m = std::max(m, std::abs(f(p, n)));
  }
  return m;
}

/// One remainder contribution C (p0-p1)^{-alpha} omega^{-beta}.
struct LedgerEntry {
  double constant = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  std::string label;

  double value(double dist, double omega) const {
    return constant * std::pow(dist, -alpha) * std::pow(omega, -beta);
  }
  /// Exponent of omega after substituting p0 - p1 = omega^{-eps}.
  double curve_exponent(double eps) const { return -beta + eps * alpha; }
};

/// One expansion term C e^{i omega phase_point} (p0-p1)^{de} omega^{oe}.
struct QuadraticTerm {
  Complex coefficient;
  double phase_point = 0.0;
  double dist_exponent = 0.0;
  double omega_exponent = 0.0;

  Complex evaluate(double dist, double omega) const {
    return coefficient * cis(omega * phase_point) * std::pow(dist, dist_exponent) *
           std::pow(omega, omega_exponent);
  }
};

enum class MuCase { Above, Equal, Below };  // mu vs 1/2

inline MuCase mu_case_of(double mu) {
  if (mu > 0.5) return MuCase::Above;
  if (mu < 0.5) return MuCase::Below;
  return MuCase::Equal;
}

/// Default delta: positioned with margin above every constraint the proofs
/// impose (delta > mu, delta > 1/2 + eps, delta >= (mu+1)/2), capped at 0.99.
inline double default_delta(double mu, double eps = 0.0) {
  double m = std::max({mu, 0.5 + eps, 0.5 * (mu + 1.0)});
  return std::min(0.99, m + 0.5 * (1.0 - m));
}

struct HalfExpansion {
  int side = 1;  // 1: [p1, p0], 2: [p0, p2]
  double mu = 0.5, dist = 0.0;
  double delta = 0.0, gamma = 0.0;
  std::vector<QuadraticTerm> terms;
  std::vector<LedgerEntry> ledger;

  Complex evaluate(double omega) const {
    Complex acc(0.0);
    for (const auto& t : terms) acc += t.evaluate(dist, omega);
    return acc;
  }
  double bound(double omega) const {
    double acc = 0.0;
    for (const auto& e : ledger) acc += e.value(dist, omega);
    return acc;
  }
};

namespace detail {

struct QuadraticContext {
  double p1, p2, p0, c, mu, dist;
  double u_p1, u_p0;    // u~(p1), u~(p0)
  double norm_sup;      // ||u~||_inf on [p1,p2]
  double norm_w1;       // max(||u~||_inf, ||u~'||_inf)
  double delta, gamma, L2;
};

inline QuadraticContext quadratic_context(const OscillatoryProblem& pr,
                                          double delta) {
  if (!pr.phase.is_quadratic())
    throw std::invalid_argument("quadratic expansion: phase must be quadratic");
  const auto& q = pr.phase.quadratic();
  if (!(q.p0 > pr.p1 && q.p0 < pr.p2))
    throw std::invalid_argument("quadratic expansion: p0 must lie inside (p1, p2)");
  if (pr.amplitude.mu2 != 1.0)
    throw std::invalid_argument("quadratic expansion: right endpoint must be regular (mu2 = 1)");
  if (!(pr.amplitude.mu1 > 0.0 && pr.amplitude.mu1 <= 1.0))
    throw std::invalid_argument("quadratic expansion: mu must be in (0, 1]");
  if (!(delta > 0.5 && delta < 1.0))
    throw std::invalid_argument("quadratic expansion: delta must lie in (1/2, 1)");

  QuadraticContext cx;
  cx.p1 = pr.p1;
  cx.p2 = pr.p2;
  cx.p0 = q.p0;
  cx.c = q.c;
  cx.mu = pr.amplitude.mu1;
  cx.dist = q.p0 - pr.p1;
  const SmoothFn& ut = pr.amplitude.regular_part;
  cx.u_p1 = ut(pr.p1, 0);
  cx.u_p0 = ut(q.p0, 0);
  cx.norm_sup = sup_norm(ut, pr.p1, pr.p2, 0);
  cx.norm_w1 = std::max(cx.norm_sup, sup_norm(ut, pr.p1, pr.p2, 1));
  cx.delta = delta;
  cx.gamma = 2.0 * delta - 1.0;
  PhiEstimateConstants lc = phi_estimate_constants(1, 2.0);
  cx.L2 = balance(lc.a, lc.b, lc.c, 2.0, 1, cx.gamma).L;
  return cx;
}

inline QuadraticTerm k_tilde_term(const QuadraticContext& cx) {
  // K~_mu = (Gamma(mu)/2^mu) e^{i pi mu/2} e^{i omega psi(p1)} u~(p1).
  double psi_p1 = -(cx.p1 - cx.p0) * (cx.p1 - cx.p0) + cx.c;
  return {gamma_real(cx.mu) * std::pow(2.0, -cx.mu) * cis(pi * cx.mu / 2.0) * cx.u_p1,
          psi_p1, -cx.mu, -cx.mu};
}

inline QuadraticTerm h_tilde_term(const QuadraticContext& cx, double factor) {
  // factor * H~, with H~ = sqrt(pi) e^{-i pi/4} e^{i omega c} u~(p0).
  return {factor * std::sqrt(pi) * cis(-pi / 4.0) * cx.u_p0, cx.c, cx.mu - 1.0, -0.5};
}

inline std::vector<LedgerEntry> side1_ledger(const QuadraticContext& cx) {
  const double mu = cx.mu, W = cx.norm_w1, S = cx.norm_sup;
  const double Lg = cx.L2 / (1.0 - cx.gamma);
  return {
      {std::pow(2.0, 2.0 - mu) / mu * (2.0 - mu) * W, 2.0 - mu, 1.0, "R1(1)"},
      {std::pow(2.0, 1.0 - mu) / mu * W, 1.0 - mu, 1.0, "R2(1)"},
      {(1.0 - mu) * std::pow(2.0, 3.0 - mu) / 3.0 * S, 4.0 - mu, 2.0, "R3(1)"},
      {Lg * std::pow(2.0, 2.0 - mu) * (1.0 - mu) * W, 1.0 + cx.gamma - mu, cx.delta, "R4(1)"},
      {Lg * std::pow(2.0, 1.0 - mu) * W, cx.gamma - mu, cx.delta, "R5(1)"},
      {std::sqrt(pi) * std::pow(2.0, 2.0 - mu) * S, 3.0 - mu, 1.5, "R6(1)"},
  };
}

inline std::vector<LedgerEntry> side2_ledger(const QuadraticContext& cx) {
  const double mu = cx.mu, W = cx.norm_w1;
  const double Lg = cx.L2 / (1.0 - cx.gamma);
  const double len = std::pow(cx.p2 - cx.p1, 1.0 - cx.gamma);
  return {
      {Lg * (1.0 - mu) * len * W, 2.0 - mu, cx.delta, "R1(2)"},
      {Lg * len * W, 1.0 - mu, cx.delta, "R2(2)"},
  };
}

}  // namespace detail

/// Half-interval expansion with the explicit constant ledger: side 1 is
/// [p1, p0] (cut at the midpoint), side 2 is [p0, p2]; U(p2) = 0 required
/// for side 2.
inline HalfExpansion expand_half(const OscillatoryProblem& pr, int side,
                                 double delta = -1.0) {
  if (side != 1 && side != 2) throw std::invalid_argument("expand_half: side must be 1 or 2");
  detail::QuadraticContext cx =
      detail::quadratic_context(pr, delta > 0.0 ? delta : default_delta(pr.amplitude.mu1));
  HalfExpansion hx;
  hx.side = side;
  hx.mu = cx.mu;
  hx.dist = cx.dist;
  hx.delta = cx.delta;
  hx.gamma = cx.gamma;
  if (side == 1) {
    hx.terms = {detail::k_tilde_term(cx), detail::h_tilde_term(cx, 0.5)};
    hx.ledger = detail::side1_ledger(cx);
  } else {
    if (std::abs(pr.amplitude.regular_part(pr.p2, 0)) > 1e-10 * (1.0 + cx.norm_sup))
      throw std::invalid_argument("expand_half side 2: requires u~(p2) = 0");
    hx.terms = {detail::h_tilde_term(cx, 0.5)};
    hx.ledger = detail::side2_ledger(cx);
  }
  return hx;
}

struct QuadraticExpansion {
  MuCase mu_case = MuCase::Equal;
  double mu = 0.5, dist = 0.0;
  double delta = 0.0, gamma = 0.0;
  std::vector<QuadraticTerm> leading;
  std::vector<LedgerEntry> ledger;  // 9 entries (mu != 1/2) or 8 (mu = 1/2)

  Complex evaluate_leading(double omega) const {
    Complex acc(0.0);
    for (const auto& t : leading) acc += t.evaluate(dist, omega);
    return acc;
  }
  double bound(double omega) const {
    double acc = 0.0;
    for (const auto& e : ledger) acc += e.value(dist, omega);
    return acc;
  }
  /// Decay exponent (of omega) of the leading term at fixed p0.
  double leading_decay() const {
    switch (mu_case) {
      case MuCase::Below: return -mu;
      default: return -0.5;
    }
  }
};

/// Full three-case expansion with the case-appropriate leading term(s) and
/// tilde ledger. delta <= 0 selects the default (which satisfies
/// delta >= (mu+1)/2, keeping every alpha~ nonnegative).
inline QuadraticExpansion expand_full(const OscillatoryProblem& pr,
                                      double delta = -1.0) {
  detail::QuadraticContext cx =
      detail::quadratic_context(pr, delta > 0.0 ? delta : default_delta(pr.amplitude.mu1));
  if (std::abs(pr.amplitude.regular_part(pr.p2, 0)) > 1e-10 * (1.0 + cx.norm_sup))
    throw std::invalid_argument("expand_full: requires u~(p2) = 0");
  if (!(cx.delta > cx.mu))
    throw std::invalid_argument("expand_full: delta must exceed mu");

  QuadraticExpansion qx;
  qx.mu_case = mu_case_of(cx.mu);
  qx.mu = cx.mu;
  qx.dist = cx.dist;
  qx.delta = cx.delta;
  qx.gamma = cx.gamma;

  switch (qx.mu_case) {
    case MuCase::Above:
      qx.leading = {detail::h_tilde_term(cx, 1.0)};
      qx.ledger.push_back({gamma_real(cx.mu) * std::pow(2.0, -cx.mu) * cx.norm_sup,
                           cx.mu, cx.mu, "Rt1(1)"});
      break;
    case MuCase::Equal:
      qx.leading = {detail::h_tilde_term(cx, 1.0), detail::k_tilde_term(cx)};
      break;
    case MuCase::Below:
      qx.leading = {detail::k_tilde_term(cx)};
      qx.ledger.push_back({std::sqrt(pi) * cx.norm_sup, 1.0 - cx.mu, 0.5, "Rt1(3)"});
      break;
  }
  for (auto& e : detail::side1_ledger(cx)) qx.ledger.push_back(e);
  for (auto& e : detail::side2_ledger(cx)) qx.ledger.push_back(e);
  return qx;
}

struct CurveRegime {
  double eps = 0.0;
  double mu = 0.5;
  double delta = 0.0, gamma = 0.0;
  double leading_exponent = 0.0;           // of omega, with p0 - p1 = omega^{-eps}
  std::vector<double> ledger_exponents;    // -beta~_k + eps alpha~_k
  std::vector<double> ledger_constants;
  bool dominance = false;                  // max ledger exponent < leading exponent
  double omega_threshold = 0.0;            // validity: omega > (p2-p1)^{-1/eps}
  MuCase mu_case = MuCase::Equal;

  // Underlying family data for evaluation at a given omega.
  OscillatoryProblem family;

  double p0_at(double omega) const { return family.p1 + std::pow(omega, -eps); }
  Complex leading_value(double omega) const;
  double bound(double omega) const {
    double acc = 0.0;
    for (std::size_t k = 0; k < ledger_constants.size(); ++k)
      acc += ledger_constants[k] * std::pow(omega, ledger_exponents[k]);
    return acc;
  }
};

inline Complex CurveRegime::leading_value(double omega) const {
  OscillatoryProblem pr = family;
  pr.phase = PhaseSpec::quadratic(p0_at(omega), family.phase.quadratic().c);
  QuadraticExpansion qx = expand_full(pr, delta);
  return qx.evaluate_leading(omega);
}

/// Curve regime p0 = p1 + omega^{-eps}: the ledger's blow-up powers become
/// omega powers, and dominance of the leading exponent is certified by
/// exponent arithmetic.
inline CurveRegime curve_regime(const OscillatoryProblem& family, double eps,
                                double delta = -1.0) {
  if (!(eps > 0.0 && eps < 0.5))
    throw std::invalid_argument("curve_regime: eps must lie in (0, 1/2)");
  double mu = family.amplitude.mu1;
  CurveRegime cr;
  cr.eps = eps;
  cr.mu = mu;
  cr.mu_case = mu_case_of(mu);
  cr.delta = delta > 0.0 ? delta : default_delta(mu, eps);
  cr.gamma = 2.0 * cr.delta - 1.0;
  cr.family = family;
  cr.omega_threshold = std::pow(family.p2 - family.p1, -1.0 / eps);

  switch (cr.mu_case) {
    case MuCase::Above: cr.leading_exponent = -0.5 + eps * (1.0 - mu); break;
    case MuCase::Equal: cr.leading_exponent = -0.5 + 0.5 * eps; break;
    case MuCase::Below: cr.leading_exponent = -mu + eps * mu; break;
  }

  // Ledger exponents/constants from the full expansion at a nominal p0; the
  // tilde constants do not depend on p0.
  OscillatoryProblem nominal = family;
  nominal.phase = PhaseSpec::quadratic(
      family.p1 + 0.5 * (family.p2 - family.p1), family.phase.quadratic().c);
  QuadraticExpansion qx = expand_full(nominal, cr.delta);
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& e : qx.ledger) {
    cr.ledger_constants.push_back(e.constant);
    cr.ledger_exponents.push_back(e.curve_exponent(eps));
    worst = std::max(worst, e.curve_exponent(eps));
  }
  cr.dominance = worst < cr.leading_exponent;
  return cr;
}

}  // namespace phasekit

#endif  // PHASEKIT_QUADRATIC_HPP
