#ifndef PHASEKIT_SCHRODINGER_HPP
#define PHASEKIT_SCHRODINGER_HPP

#include "phasekit/oracle.hpp"
#include "phasekit/quadratic.hpp"

namespace phasekit {

/// Initial datum with F u0(p) = (p-p1)^{mu-1} u~(p) on [p1, p2], zero
/// elsewhere; u~(p2) = 0 and u~(p1) != 0.
struct InitialData {
  double mu = 0.75;
  double p1 = 0.0, p2 = 1.0;
  SmoothFn utilde = SmoothFn::polynomial({1.0, -1.0});

  /// Builds from polynomial coefficients, multiplying by (p2 - p) unless the
  /// polynomial already vanishes at p2.
  static InitialData make(double mu, double p1, double p2, std::vector<double> coeffs) {
    SmoothFn raw = SmoothFn::polynomial(coeffs);
    if (std::abs(raw(p2, 0)) > 1e-12 * (1.0 + sup_norm(raw, p1, p2, 0))) {
      std::vector<double> lifted(coeffs.size() + 1, 0.0);
      for (std::size_t k = 0; k < coeffs.size(); ++k) {
        lifted[k] += p2 * coeffs[k];
        lifted[k + 1] -= coeffs[k];
      }
      raw = SmoothFn::polynomial(lifted);
    }
    return InitialData{mu, p1, p2, raw};
  }
};

inline ValidationReport validate_data(const InitialData& d) {
  ValidationReport rep;
  if (!(d.mu > 0.0 && d.mu < 1.0)) rep.violations.push_back("mu outside (0,1)");
  if (!(d.p1 < d.p2)) rep.violations.push_back("p1 must be strictly less than p2");
  if (d.utilde(d.p1, 0) == 0.0) rep.violations.push_back("u~(p1) must be nonzero");
  if (std::abs(d.utilde(d.p2, 0)) > 1e-10)
    rep.violations.push_back("u~(p2) must vanish");
  return rep;
}

/// u(t,x) as the oscillatory problem int U e^{i t psi} with U = F u0 / (2 pi)
/// and psi(p) = -(p - x/2t)^2 + (x/2t)^2.
inline OscillatoryProblem schrodinger_problem(const InitialData& d, double t, double x) {
  double p0 = x / (2.0 * t);
  OscillatoryProblem pr;
  pr.p1 = d.p1;
  pr.p2 = d.p2;
  SmoothFn ut = d.utilde;
  pr.amplitude = {d.mu, 1.0,
                  SmoothFn{[ut](double p, int n) { return ut(p, n) / (2.0 * pi); },
                           ut.max_order}};
  pr.phase = PhaseSpec::quadratic(p0, p0 * p0);
  return pr;
}

/// Ground truth: u(t,x) by direct quadrature of the solution formula.
inline Complex u_oracle(const InitialData& d, double t, double x,
                        const QuadratureSettings& qs = {}) {
  if (!(t > 0.0)) throw std::domain_error("u_oracle: t must be > 0");
  return oscillatory_integral(schrodinger_problem(d, t, x), t, qs);
}

// ---------------------------------------------------------------------------
// Space-time regions (Definition 4.1).

struct Cone {  // 2a < x/t < 2b
  double a = 0.0, b = 0.0;
  bool contains(double t, double x) const {
    return t > 0.0 && 2.0 * a < x / t && x / t < 2.0 * b;
  }
};

struct Curve {  // x/t = 2a + 2 t^{-eps}
  double a = 0.0, eps = 0.0;
  double x_at(double t) const { return (2.0 * a + 2.0 * std::pow(t, -eps)) * t; }
  bool contains(double t, double x) const {
    return t > 0.0 && x == x_at(t);
  }
};

struct Region {  // 2a + 2 t^{-eps} <= x/t < 2b, t > T_eps(a,b)
  double a = 0.0, b = 0.0, eps = 0.0;
  double threshold() const { return std::pow(b - a, -1.0 / eps); }
  bool contains(double t, double x) const {
    if (!(t > threshold())) return false;
    double edge = 2.0 * a + 2.0 * std::pow(t, -eps);
    // Half-ulp slack so the boundary curve itself tests as a member.
    double slack = 8.0 * std::numeric_limits<double>::epsilon() * std::abs(edge);
    return x / t >= edge - slack && x / t < 2.0 * b;
  }
};

// ---------------------------------------------------------------------------
// Regime expansions.

/// A leading term C * t^e plus a remainder ledger sum_k C_k t^{e_k}; every
/// ledger exponent is strictly below the leading exponent.
struct RegimeReport {
  std::string regime;
  std::vector<std::pair<Complex, double>> leading;  // (coefficient, t-exponent)
  std::vector<std::pair<double, double>> ledger;    // (constant, t-exponent)
  double leading_exponent = 0.0;

  Complex leading_value(double t) const {
    Complex acc(0.0);
    for (const auto& [c, e] : leading) acc += c * std::pow(t, e);
    return acc;
  }
  double bound(double t) const {
    double acc = 0.0;
    for (const auto& [c, e] : ledger) acc += c * std::pow(t, e);
    return acc;
  }
};

namespace detail {

inline Complex H_coefficient(const InitialData& d, double t, double x) {
  double p = x / (2.0 * t);
  return 1.0 / (2.0 * std::sqrt(pi)) * cis(-pi / 4.0 + x * x / (4.0 * t)) *
         d.utilde(p, 0) * std::pow(p - d.p1, d.mu - 1.0);
}

inline Complex K_coefficient(const InitialData& d, double t, double x) {
  double p = x / (2.0 * t);
  return gamma_real(d.mu) / (std::pow(2.0, d.mu + 1.0) * pi) *
         cis(pi * d.mu / 2.0 - t * d.p1 * d.p1 + x * d.p1) * d.utilde(d.p1, 0) *
         std::pow(p - d.p1, -d.mu);
}

/// Full quadratic-phase expansion for the amplitude F u0 / (2 pi).
inline QuadraticExpansion schrodinger_full_expansion(const InitialData& d,
                                                     double t, double x,
                                                     double delta) {
  return expand_full(schrodinger_problem(d, t, x), delta);
}

}  // namespace detail

/// Expansion in the cone 2(p1+eps) < x/t < 2 p2. Case selected
/// by mu vs 1/2; ledger constants are the tilde constants times eps^{-alpha~}.
inline RegimeReport cone_expansion(const InitialData& d, double eps, double t,
                                   double x) {
  if (!(eps > 0.0 && d.p1 + eps < d.p2))
    throw std::invalid_argument("cone_expansion: need 0 < eps < p2 - p1");
  if (!Cone{d.p1 + eps, d.p2}.contains(t, x))
    throw std::domain_error("cone_expansion: (t,x) outside the cone");
  double delta = default_delta(d.mu);
  QuadraticExpansion qx = detail::schrodinger_full_expansion(d, t, x, delta);

  RegimeReport rep;
  rep.regime = "cone";
  switch (qx.mu_case) {
    case MuCase::Above:
      rep.leading = {{detail::H_coefficient(d, t, x), -0.5}};
      rep.leading_exponent = -0.5;
      break;
    case MuCase::Equal:
      rep.leading = {{detail::H_coefficient(d, t, x), -0.5},
                     {detail::K_coefficient(d, t, x), -0.5}};
      rep.leading_exponent = -0.5;
      break;
    case MuCase::Below:
      rep.leading = {{detail::K_coefficient(d, t, x), -d.mu}};
      rep.leading_exponent = -d.mu;
      break;
  }
  for (const auto& e : qx.ledger)
    rep.ledger.push_back({e.constant * std::pow(eps, -e.alpha), -e.beta});
  return rep;
}

/// Expansion outside the band cone; leading term K_mu^{(1|2)} t^{-mu},
/// remainder C^{(1|2)}(u0, eps) t^{-1}.
inline RegimeReport outside_cone_expansion(const InitialData& d, double eps,
                                           double t, double x) {
  if (!(eps > 0.0 && -1.0 / eps < d.p1 - eps && d.p2 + eps < 1.0 / eps))
    throw std::invalid_argument("outside_cone_expansion: eps too large for the band");
  bool left = Cone{-1.0 / eps, d.p1 - eps}.contains(t, x);
  bool right = Cone{d.p2 + eps, 1.0 / eps}.contains(t, x);
  if (!left && !right)
    throw std::domain_error("outside_cone_expansion: (t,x) outside both cones");

  double p = x / (2.0 * t);
  double W = std::max(sup_norm(d.utilde, d.p1, d.p2, 0), sup_norm(d.utilde, d.p1, d.p2, 1));
  RegimeReport rep;
  rep.regime = left ? "outside-left" : "outside-right";
  rep.leading_exponent = -d.mu;
  double klead = gamma_real(d.mu) / (std::pow(2.0, d.mu + 1.0) * pi) * d.utilde(d.p1, 0);
  if (left) {
    Complex K1 = klead * cis(-pi * d.mu / 2.0 - t * d.p1 * d.p1 + x * d.p1) *
                 std::pow(d.p1 - p, -d.mu);
    rep.leading = {{K1, -d.mu}};
    double C = 1.0 / (4.0 * pi * d.mu) * (d.p2 + 1.0 / eps) *
               std::pow(d.p2 - d.p1, d.mu) * W *
               ((1.0 - d.mu) / 2.0 * (d.p2 + 1.0 / eps) * std::pow(eps, -4.0) +
                std::pow(eps, -2.0) + std::pow(eps, -3.0));
    rep.ledger = {{C, -1.0}};
  } else {
    Complex K2 = klead * cis(pi * d.mu / 2.0 - t * d.p1 * d.p1 + x * d.p1) *
                 std::pow(p - d.p1, -d.mu);
    rep.leading = {{K2, -d.mu}};
    double C = 1.0 / (4.0 * pi * d.mu) * (1.0 / eps - d.p1) *
               std::pow(d.p2 - d.p1, d.mu) * W *
               ((1.0 - d.mu) / 2.0 * (1.0 / eps - d.p1) * std::pow(eps, -4.0) +
                std::pow(eps, -2.0) + std::pow(eps, -3.0));
    rep.ledger = {{C, -1.0}};
  }
  return rep;
}

/// Frozen critical-line normalization (oracle-limit value; see README).
inline constexpr double critical_line_zeta = 1.0 / (2.0 * pi);

/// Expansion on the critical line x = 2 p1 t: zeta L_mu t^{-mu/2} with remainder
/// zeta C(u0) t^{-1/2}; zeta defaults to the frozen oracle-limit value.
inline RegimeReport critical_line_expansion(const InitialData& d, double t,
                                            double zeta = critical_line_zeta) {
  if (!(t > 0.0)) throw std::domain_error("critical_line_expansion: t must be > 0");
  Complex Lmu = 0.5 * gamma_real(d.mu / 2.0) *
                cis(-pi * d.mu / 4.0 + t * d.p1 * d.p1) * d.utilde(d.p1, 0);
  double C = std::sqrt(pi) / (2.0 * d.mu) * std::pow(d.p2 - d.p1, d.mu) *
             sup_norm(d.utilde, d.p1, d.p2, 1);
  RegimeReport rep;
  rep.regime = "critical-line";
  rep.leading = {{zeta * Lmu, -0.5 * d.mu}};
  rep.leading_exponent = -0.5 * d.mu;
  rep.ledger = {{zeta * C, -0.5}};
  return rep;
}

struct RegionBound {
  double value = 0.0;
  double leading_exponent = 0.0;
  std::vector<std::pair<double, double>> ledger;  // (constant, t-exponent)
  double leading_constant = 0.0;
};

/// Uniform bound in the region R_eps(p1, p2):
/// |u| <= C_0 t^{lead} + sum C_k t^{-beta~_k + eps alpha~_k}.
inline RegionBound region_uniform_bound(const InitialData& d, double eps,
                                        double t, double x,
                                        bool verify_with_oracle = false,
                                        const QuadratureSettings& qs = {}) {
  if (!(eps > 0.0 && eps < 0.5))
    throw std::invalid_argument("region_uniform_bound: eps must lie in (0, 1/2)");
  Region reg{d.p1, d.p2, eps};
  if (!reg.contains(t, x))
    throw std::domain_error("region_uniform_bound: (t,x) outside the region");

  double S = sup_norm(d.utilde, d.p1, d.p2, 0);
  double delta = default_delta(d.mu, eps);
  QuadraticExpansion qx = detail::schrodinger_full_expansion(d, t, x, delta);

  RegionBound rb;
  switch (qx.mu_case) {
    case MuCase::Above:
      rb.leading_exponent = -0.5 + eps * (1.0 - d.mu);
      rb.leading_constant = S / (2.0 * std::sqrt(pi));
      break;
    case MuCase::Equal:
      rb.leading_exponent = -0.5 + 0.5 * eps;
      rb.leading_constant =
          (1.0 / (2.0 * std::sqrt(pi)) + gamma_real(d.mu) / std::pow(2.0, d.mu + 1.0)) * S;
      break;
    case MuCase::Below:
      rb.leading_exponent = -d.mu + eps * d.mu;
      rb.leading_constant = gamma_real(d.mu) / std::pow(2.0, d.mu + 1.0) * S;
      break;
  }
  rb.value = rb.leading_constant * std::pow(t, rb.leading_exponent);
  for (const auto& e : qx.ledger) {
    double expo = e.curve_exponent(eps);
    rb.ledger.push_back({e.constant, expo});
    rb.value += e.constant * std::pow(t, expo);
  }
  if (verify_with_oracle) {
    double mag = std::abs(u_oracle(d, t, x, qs));
    if (mag > rb.value * (1.0 + 1e-6))
      throw std::runtime_error("region_uniform_bound: oracle exceeds the bound");
  }
  return rb;
}

/// Expansion on the boundary curve x/t = 2 p1 + 2 t^{-eps}; attains the
/// uniform region rates, establishing their optimality.
inline RegimeReport boundary_curve_expansion(const InitialData& d, double eps,
                                             double t) {
  Region reg{d.p1, d.p2, eps};
  if (!(t > reg.threshold()))
    throw std::domain_error("boundary_curve_expansion: t below the validity threshold");
  double x = Curve{d.p1, eps}.x_at(t);
  double pe = d.p1 + std::pow(t, -eps);
  double delta = default_delta(d.mu, eps);
  QuadraticExpansion qx = detail::schrodinger_full_expansion(d, t, x, delta);

  Complex H = 1.0 / (2.0 * std::sqrt(pi)) * cis(-pi / 4.0 + t * pe * pe) * d.utilde(pe, 0);
  Complex K = gamma_real(d.mu) / (std::pow(2.0, d.mu + 1.0) * pi) *
              cis(pi * d.mu / 2.0 - t * d.p1 * d.p1 + x * d.p1) * d.utilde(d.p1, 0);

  RegimeReport rep;
  rep.regime = "boundary-curve";
  switch (qx.mu_case) {
    case MuCase::Above:
      rep.leading_exponent = -0.5 + eps * (1.0 - d.mu);
      rep.leading = {{H, rep.leading_exponent}};
      break;
    case MuCase::Equal:
      rep.leading_exponent = -0.5 + 0.5 * eps;
      rep.leading = {{H, rep.leading_exponent}, {K, rep.leading_exponent}};
      break;
    case MuCase::Below:
      rep.leading_exponent = -d.mu + eps * d.mu;
      rep.leading = {{K, rep.leading_exponent}};
      break;
  }
  for (const auto& e : qx.ledger)
    rep.ledger.push_back({e.constant, e.curve_exponent(eps)});
  return rep;
}

/// ||u(t,.)||_{L^2} over a wide grid: unit panels across the band cone plus
/// 40 sqrt(t) of dispersive spreading, then geometrically growing panels out
/// to `tail_extent` beyond (the |x|^{-2 mu} tails carry slow mass).
inline double l2_norm_wide(const InitialData& d, double t,
                           const QuadratureSettings& qs = {},
                           double tail_extent = 5000.0) {
  double spread = 40.0 * std::sqrt(t) + 10.0;
  double lo = 2.0 * d.p1 * t - spread, hi = 2.0 * d.p2 * t + spread;
  QuadratureSettings uq = qs;
  uq.rel_tol = std::max(qs.rel_tol, 1e-6);
  uq.abs_tol = 1e-12;
  auto usq = [&](double x) { return std::norm(u_oracle(d, t, x, uq)); };
  QuadratureSettings pq;
  pq.rel_tol = 1e-7;
  pq.abs_tol = 1e-13;

  double acc = 0.0;
  int n_central = static_cast<int>(std::ceil(hi - lo));
  for (int i = 0; i < n_central; ++i) {
    double a = lo + (hi - lo) * i / n_central;
    double b = lo + (hi - lo) * (i + 1) / n_central;
    acc += integrate_adaptive(usq, a, b, pq);
  }
  for (int side = 0; side < 2; ++side) {
    double edge = (side == 0) ? hi : lo;
    double dir = (side == 0) ? 1.0 : -1.0;
    double width = 1.0, off = 0.0;
    QuadratureSettings tq;
    tq.rel_tol = 1e-5;
    tq.abs_tol = 1e-12;
    while (off < tail_extent) {
      double a = edge + dir * off;
      double b = edge + dir * (off + width);
      acc += integrate_adaptive(usq, std::min(a, b), std::max(a, b), tq);
      off += width;
      width *= 1.18;
    }
  }
  return std::sqrt(acc);
}

/// Parseval reference: (1/sqrt(2 pi)) ||F u0||_{L^2(R)}; finite only for
/// mu > 1/2 (the weight (p-p1)^{2 mu-2} must stay integrable).
inline double l2_norm_reference(const InitialData& d) {
  QuadratureSettings qs;
  qs.rel_tol = 1e-12;
  qs.abs_tol = 1e-16;
  double I = integrate_endpoint_singular(
      [&](double s) {
        double v = d.utilde(d.p1 + s, 0);
        return v * v;
      },
      d.p2 - d.p1, 2.0 * d.mu - 1.0, qs);
  return std::sqrt(I / (2.0 * pi));
}

struct EnergyWindow {
  double windowed = 0.0;  // ||u(t,.)||_{L^2(I_t)}
  double limit = 0.0;     // (1/sqrt(2 pi)) ||F u0||_{L^2(p1+eps, p2)}
  double bound = 0.0;     // sum C~_k t^{-beta~_k + 1/2}
};

/// Windowed energy over I_t = (2(p1+eps) t, 2 p2 t) against its dispersive
/// limit; requires mu > 1/2 (the L^2 case).
inline EnergyWindow energy_window(const InitialData& d, double eps, double t,
                                  const QuadratureSettings& qs = {}) {
  if (!(d.mu > 0.5)) throw std::domain_error("energy_window: requires mu > 1/2");
  if (!(eps > 0.0 && d.p1 + eps < d.p2))
    throw std::invalid_argument("energy_window: need 0 < eps < p2 - p1");

  EnergyWindow ew;
  // Windowed norm: panels of width t/16 (32 per unit of x/2t across the band).
  double xa = 2.0 * (d.p1 + eps) * t, xb = 2.0 * d.p2 * t;
  int n_panels = std::max(1, static_cast<int>(std::ceil(32.0 * (d.p2 - d.p1 - eps))));
  QuadratureSettings panel_qs = qs;
  panel_qs.rel_tol = std::max(qs.rel_tol, 1e-7);
  panel_qs.abs_tol = 1e-12;
  auto usq = [&](double x) { return std::norm(u_oracle(d, t, x, panel_qs)); };
  double acc = 0.0;
  for (int i = 0; i < n_panels; ++i) {
    double a = xa + (xb - xa) * i / n_panels;
    double b = xa + (xb - xa) * (i + 1) / n_panels;
    acc += integrate_adaptive(usq, a, b, panel_qs);
  }
  ew.windowed = std::sqrt(acc);

  QuadratureSettings lq;
  lq.rel_tol = 1e-11;
  lq.abs_tol = 1e-15;
  auto fsq = [&](double p) {
    double v = std::pow(p - d.p1, d.mu - 1.0) * d.utilde(p, 0);
    return v * v;
  };
  ew.limit = std::sqrt(integrate_adaptive(fsq, d.p1 + eps, d.p2, lq) / (2.0 * pi));

  double factor = std::sqrt(2.0 * (d.p2 - d.p1 - eps));
  RegimeReport cone = cone_expansion(d, eps, t, 0.5 * (xa + xb));
  for (const auto& [c, e] : cone.ledger) ew.bound += factor * c * std::pow(t, e + 0.5);
  return ew;
}

}  // namespace phasekit

#endif  // PHASEKIT_SCHRODINGER_HPP
