#ifndef PHASEKIT_SUBSTITUTION_HPP
#define PHASEKIT_SUBSTITUTION_HPP

#include <memory>

#include "phasekit/model.hpp"
#include "phasekit/numerics.hpp"

namespace phasekit {

/// The substitution phi_1(p) = (psi(p)-psi(p1))^{1/rho1} on [p1, q] (side 1)
/// or phi_2(p) = (psi(p2)-psi(p))^{1/rho2} on [q, p2] (side 2), together with
/// its inverse and derivatives. phi_2 decreases; both map onto [0, s_max].
class Diffeo {
 public:
  int side = 1;
  double p_low = 0.0, p_high = 1.0;  // domain in p
  double rho = 1.0;
  double s_max = 0.0;  // phi_j(q)

  double forward(double p) const {
    double d = psi_diff(p);
    return (rho == 1.0) ? d : std::pow(d, 1.0 / rho);
  }

  /// phi_j'(p); negative for side 2. Near the endpoint p_j the direct formula
  /// is 0/0 and the Taylor-representation J integral supplies the value.
  double forward_deriv(double p) const {
    double endpoint = (side == 1) ? p_low : p_high;
    double len = p_high - p_low;
    if (std::abs(p - endpoint) <= 1e-4 * len) return deriv_via_j(p);
    double d = psi_diff(p);
    double sgn = (side == 1) ? 1.0 : -1.0;
    return sgn * dpsi_(p) * std::pow(d, 1.0 / rho - 1.0) / rho;
  }

  double inverse(double s) const {
    if (s <= 0.0) return (side == 1) ? p_low : p_high;
    if (s >= s_max) return (side == 1) ? p_high : p_low;
    // The sample table gives a tight bracket for the root solve.
    std::size_t lo = 0, hi = samples_s_.size() - 1;
    while (hi - lo > 1) {
      std::size_t m = (lo + hi) / 2;
      if (samples_s_[m] <= s)
        lo = m;
      else
        hi = m;
    }
    double a = samples_p_[lo], b = samples_p_[hi];
    return solve_monotone_root([&](double p) { return forward(p) - s; },
                               std::min(a, b), std::max(a, b));
  }

  double inverse_deriv(double s) const { return 1.0 / forward_deriv(inverse(s)); }

 private:
  friend Diffeo build_diffeo(const OscillatoryProblem&, int, double);

  double psi_diff(double p) const {
    if (quadratic_) {
      // psi(p)-psi(p1) and psi(p2)-psi(p) in cancellation-free product form.
      double pj = (side == 1) ? dom_p1_ : dom_p2_;
      double sgn = (side == 1) ? 1.0 : -1.0;
      return sgn * (pj - p) * (pj + p - 2.0 * quad_p0_);
    }
    double from = (side == 1) ? dom_p1_ : p;
    double to = (side == 1) ? p : dom_p2_;
    if (from == to) return 0.0;
    QuadratureSettings qs;
    qs.rel_tol = 1e-13;
    qs.abs_tol = 0.0;
    return integrate_adaptive([&](double x) { return dpsi_(x); }, from, to, qs);
  }

  // phi'(p) from phi_1(p) = (p-p1) J(p)^{1/rho} (and mirrored for side 2).
  double deriv_via_j(double p) const {
    double pj = (side == 1) ? dom_p1_ : dom_p2_;
    double d = (side == 1) ? p - pj : pj - p;
    QuadratureSettings qs;
    qs.rel_tol = 1e-13;
    qs.abs_tol = 1e-300;
    double J = integrate_adaptive(
        [&](double y) { return std::pow(y, rho - 1.0) * psi_tilde_other_(pj + (p - pj) * y, 0); },
        0.0, 1.0, qs);
    double Jp = integrate_adaptive(
        [&](double y) { return std::pow(y, rho) * psi_tilde_other_(pj + (p - pj) * y, 1); },
        0.0, 1.0, qs);
    double sgn = (side == 1) ? 1.0 : -1.0;
    return sgn * (std::pow(J, 1.0 / rho) +
                  d * (1.0 / rho) * std::pow(J, 1.0 / rho - 1.0) * Jp);
  }

  bool quadratic_ = false;
  double quad_p0_ = 0.0;
  double dom_p1_ = 0.0, dom_p2_ = 1.0;  // problem endpoints (not q)
  std::function<double(double)> dpsi_;
  std::function<double(double, int)> psi_tilde_other_;  // psi~ with the far endpoint factor absorbed
  std::vector<double> samples_p_, samples_s_;
};

/// Builds the side-j diffeomorphism for the cut q in (p1, p2). A non-monotone
/// phase on the domain (an invalid problem) surfaces as an error here.
inline Diffeo build_diffeo(const OscillatoryProblem& pr, int side, double q) {
  if (side != 1 && side != 2) throw std::invalid_argument("build_diffeo: side must be 1 or 2");
  if (!(q > pr.p1 && q < pr.p2)) throw std::invalid_argument("build_diffeo: cut must be interior");
  PhaseFactorization fac = phase_factorization(pr);

  Diffeo d;
  d.side = side;
  d.rho = (side == 1) ? fac.rho1 : fac.rho2;
  d.p_low = (side == 1) ? pr.p1 : q;
  d.p_high = (side == 1) ? q : pr.p2;
  d.dom_p1_ = pr.p1;
  d.dom_p2_ = pr.p2;
  d.quadratic_ = pr.phase.is_quadratic();
  if (d.quadratic_) d.quad_p0_ = pr.phase.quadratic().p0;
  d.dpsi_ = [pr](double p) { return eval_phase(pr, p, 1); };

  // psi~ with the opposite endpoint's power folded in: psi~_2 for side 1,
  // psi~_1 for side 2 (the factor that stays regular at this side's endpoint).
  const double p1 = pr.p1, p2 = pr.p2;
  if (side == 1) {
    double rho2 = fac.rho2;
    auto pt = fac.psi_tilde;
    d.psi_tilde_other_ = [pt, p2, rho2](double p, int n) {
      if (n == 0) return std::pow(p2 - p, rho2 - 1.0) * pt(p, 0);
      return -(rho2 - 1.0) * std::pow(p2 - p, rho2 - 2.0) * pt(p, 0) +
             std::pow(p2 - p, rho2 - 1.0) * pt(p, 1);
    };
  } else {
    double rho1 = fac.rho1;
    auto pt = fac.psi_tilde;
    d.psi_tilde_other_ = [pt, p1, rho1](double p, int n) {
      if (n == 0) return std::pow(p - p1, rho1 - 1.0) * pt(p, 0);
      return (rho1 - 1.0) * std::pow(p - p1, rho1 - 2.0) * pt(p, 0) +
             std::pow(p - p1, rho1 - 1.0) * pt(p, 1);
    };
  }

  d.s_max = d.forward(q);
  if (!(d.s_max > 0.0))
    throw std::invalid_argument("build_diffeo: degenerate substitution range");

  // Monotonicity sample table; doubles as the inverse's bracket cache.
  const int n_samples = 256;
  d.samples_p_.resize(n_samples + 1);
  d.samples_s_.resize(n_samples + 1);
  double prev = -1.0;
  for (int i = 0; i <= n_samples; ++i) {
    double frac = static_cast<double>(i) / n_samples;
    double p = (side == 1) ? d.p_low + (d.p_high - d.p_low) * frac
                           : d.p_high - (d.p_high - d.p_low) * frac;
    double s = d.forward(p);
    d.samples_p_[i] = p;
    d.samples_s_[i] = s;
    if (i > 0 && !(s > prev))
      throw std::invalid_argument(
          "build_diffeo: phase is not monotone on the domain (root bracket failure)");
    prev = s;
  }
  return d;
}

/// k_j(s) = U(phi_j^{-1}(s)) s^{1-mu_j} (phi_j^{-1})'(s) on [0, s_j], with the
/// averaged-derivative representation taking over near s = 0.
class KFactor {
 public:
  int side = 1;
  double mu = 1.0;
  double at_zero = 0.0;
  double s_max = 0.0;

  double operator()(double s) const {
    if (s <= 0.0) return at_zero;
    if (s < crossover_) return averaged(s);
    double p = diffeo_.inverse(s);
    return amplitude_(p) * std::pow(s, 1.0 - mu) * diffeo_.inverse_deriv(s);
  }

  const Diffeo& diffeo() const { return diffeo_; }

 private:
  friend KFactor build_k(const OscillatoryProblem&, const Diffeo&);

  // (int_0^1 (phi^{-1})'(sy) dy)^{mu-1} u~_other(phi^{-1}(s)) (phi^{-1})'(s);
  // the inner average replaces (p - p_j)/s, which is 0/0 at the endpoint.
  double averaged(double s) const {
    double inner = gauss16_01([&](double y) {
      double v = diffeo_.inverse_deriv(s * y);
      return (side == 1) ? v : -v;
    });
    return std::pow(inner, mu - 1.0) * regular_other_(diffeo_.inverse(s)) *
           diffeo_.inverse_deriv(s);
  }

  Diffeo diffeo_;
  std::function<double(double)> amplitude_;      // full U
  std::function<double(double)> regular_other_;  // u~ with the far endpoint power folded in
  double crossover_ = 0.0;
};

inline KFactor build_k(const OscillatoryProblem& pr, const Diffeo& d) {
  KFactor k;
  k.side = d.side;
  k.mu = (d.side == 1) ? pr.amplitude.mu1 : pr.amplitude.mu2;
  k.s_max = d.s_max;
  k.diffeo_ = d;
  k.crossover_ = d.s_max / 8.0;
  k.amplitude_ = [pr](double p) { return eval_amplitude(pr, p); };
  const double p1 = pr.p1, p2 = pr.p2;
  const SmoothFn ut = pr.amplitude.regular_part;
  if (d.side == 1) {
    double mu2 = pr.amplitude.mu2;
    k.regular_other_ = [ut, p2, mu2](double p) {
      return std::pow(p2 - p, mu2 - 1.0) * ut(p, 0);
    };
    k.at_zero = k.regular_other_(p1) * std::pow(d.inverse_deriv(0.0), k.mu);
  } else {
    double mu1 = pr.amplitude.mu1;
    k.regular_other_ = [ut, p1, mu1](double p) {
      return std::pow(p - p1, mu1 - 1.0) * ut(p, 0);
    };
    double g = -d.inverse_deriv(0.0);  // |.|; side-2 inverse decreases
    k.at_zero = -k.regular_other_(p2) * std::pow(g, k.mu);
  }
  return k;
}

/// d^n k_j / ds^n at s in [0, s_j]; one-sided stencils engage at the ends.
inline double k_derivative(const KFactor& k, double s, int n,
                           DerivativeSettings ds = {}) {
  if (n == 0) return k(s);
  ds.interval_length = k.s_max;
  ds.domain_lo = 0.0;
  ds.domain_hi = k.s_max;
  return nth_derivative([&k](double x) { return k(x); }, s, n, ds);
}

}  // namespace phasekit

#endif  // PHASEKIT_SUBSTITUTION_HPP
