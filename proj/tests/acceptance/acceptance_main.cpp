// Acceptance suite: one pass/fail line per criterion, exit code = #failures.
//
// Each criterion pins its tolerances in code; nothing is calibrated at run
// time. Criteria 5 (magnitude-cap clause) and 6 encode claims that the
// numerics refute; they are implemented verbatim and report their failures
// honestly (see the README's "Known deviations" section).

#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "phasekit/phasekit.hpp"

using namespace phasekit;

namespace {

QuadratureSettings oracle_tol() {
  QuadratureSettings qs;
  qs.rel_tol = 1e-10;
  qs.abs_tol = 1e-15;
  return qs;
}

OscillatoryProblem benchmark_problem(double L) {
  OscillatoryProblem pr;
  pr.p1 = 0.0;
  pr.p2 = L;
  pr.amplitude = {0.75, 1.0, SmoothFn::constant(1.0)};
  pr.phase = PhaseSpec::quadratic(L, 0.0);
  return pr;
}

OscillatoryProblem interior_stationary_problem(double mu, double p0_frac, double L = 1.0) {
  OscillatoryProblem pr;
  pr.p1 = 1.0;
  pr.p2 = 1.0 + L;
  pr.amplitude = {mu, 1.0, SmoothFn::polynomial({pr.p2, -1.0})};
  pr.phase = PhaseSpec::quadratic(pr.p1 + p0_frac * L, 0.3);
  return pr;
}

InitialData datum(double mu) { return InitialData::make(mu, 1.0, 2.0, {2.0, -1.0}); }

std::vector<double> log_sweep(double from, double to, int per_decade) {
  int n = static_cast<int>(std::ceil(std::log10(to / from) * per_decade));
  std::vector<double> v;
  for (int i = 0; i <= n; ++i) v.push_back(from * std::pow(to / from, double(i) / n));
  return v;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

char buf[512];

// --- 1. ray_integral(s=0) vs phi_zero_closed_form --------------------------
Outcome criterion1() {
  QuadratureSettings qs;
  qs.rel_tol = 1e-11;
  qs.abs_tol = 1e-300;
  double worst = 0.0;
  for (int j : {1, 2})
    for (double rho : {1.0, 2.0, 3.0})
      for (double mu : {0.25, 0.5, 0.75, 1.0})
        for (int n : {0, 1, 2})
          for (double w : {1.0, 10.0, 100.0}) {
            Complex num = ray_integral({j, rho, mu, n, 0.0, w}, qs);
            Complex ref = phi_zero_closed_form(j, rho, mu, n, w);
            worst = std::max(worst, std::abs(num - ref) / std::abs(ref));
          }
  std::snprintf(buf, sizeof buf, "max rel err %.2e over 216 grid cells (tol 1e-8)", worst);
  return {worst <= 1e-8, buf};
}

// --- 2. primitive recursion of the ray integrals ------------------------------
Outcome criterion2() {
  QuadratureSettings qs;
  qs.rel_tol = 1e-11;
  qs.abs_tol = 1e-300;
  DerivativeSettings ds;
  double worst = 0.0;
  long checks = 0;
  for (int j : {1, 2})
    for (double rho : {1.0, 2.0, 3.0})
      for (double mu : {0.25, 0.5, 0.75, 1.0})
        for (double w : {1.0, 10.0, 100.0})
          for (int n : {0, 1, 2}) {
            for (int i = 0; i < 20; ++i) {
              double s = 0.1 + (2.0 - 0.1) * i / 19.0;
              auto hi = [&](double x) { return ray_integral({j, rho, mu, n, x, w}, qs); };
              Complex lhs = nth_derivative(hi, s, 1, ds);
              Complex rhs = (n == 0)
                                ? std::pow(s, mu - 1.0) *
                                      cis((j == 1 ? 1.0 : -1.0) * w * std::pow(s, rho))
                                : ray_integral({j, rho, mu, n - 1, s, w}, qs);
              worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
              ++checks;
            }
          }
  std::snprintf(buf, sizeof buf, "max rel err %.2e over %ld derivative checks (tol 1e-5)",
                worst, checks);
  return {worst <= 1e-5, buf};
}

// --- 3. exponential bound along the rays --------------------------------------
Outcome criterion3() {
  int tuples = 0;
  bool ok = true;
  for (double rho : {1.0, 1.5, 2.0, 2.5, 3.0})
    for (double s : {0.0, 0.05, 0.5, 2.0, 8.0})
      for (double w : {0.1, 1.0, 10.0, 100.0}) {
        std::vector<double> ts;
        for (int i = 0; i < 10; ++i) {
          double tmax = std::pow(600.0 / w, 1.0 / rho);
          ts.push_back(1e-3 * std::pow(tmax / 1e-3, i / 9.0));
        }
        ok = ok && ray_decay_check(rho, s, w, ts);
        tuples += static_cast<int>(ts.size());
      }
  std::snprintf(buf, sizeof buf, "%d sampled (rho,s,omega,t) tuples, both rays (tol 1e-12)",
                tuples);
  return {ok && tuples >= 1000, buf};
}

// --- 4. balance constants and envelope ----------------------------------------
Outcome criterion4() {
  double worst_res = 0.0;
  bool envelope_ok = true;
  for (int N : {1, 2})
    for (double rho : {2.0, 3.0}) {
      PhiEstimateConstants lc = phi_estimate_constants(N, rho);
      for (double gamma : {0.3, 0.5, 0.7}) {
        BalanceConstants bc = balance(lc.a, lc.b, lc.c, rho, N, gamma);
        worst_res = std::max(worst_res, std::abs(bc.a * std::pow(bc.K_rho, rho) -
                                                 bc.b * bc.K_rho - bc.c));
        for (int i = 0; i < 100; ++i) {
          double s = 1e-3 * std::pow(1e6, i / 99.0);
          for (int k = 0; k < 100; ++k) {
            double w = 1e-2 * std::pow(1e6, k / 99.0);
            double g1 = lc.a * std::pow(w, -double(N) / rho);
            double g2 = lc.b * std::pow(w, -(1.0 + (N - 1.0) / rho)) * std::pow(s, 1.0 - rho) +
                        lc.c * std::pow(w, -(1.0 + double(N) / rho)) * std::pow(s, -rho);
            double env = bc.L * std::pow(s, -gamma) * std::pow(w, -bc.delta);
            envelope_ok = envelope_ok && env >= std::min(g1, g2) * (1.0 - 1e-12);
          }
        }
      }
    }
  std::snprintf(buf, sizeof buf,
                "max root residual %.2e (tol 1e-12); envelope domination on 100x100 grids %s",
                worst_res, envelope_ok ? "holds" : "VIOLATED");
  return {worst_res <= 1e-12 && envelope_ok, buf};
}

// --- 5. lossless cut-point bound + benchmark magnitude cap --------------------
Outcome criterion5() {
  QuadratureSettings qs = oracle_tol();
  int bound_bad = 0, cap_bad = 0, points = 0;
  double worst_cap = 0.0;
  for (double L : {1.0, 0.5, 0.125}) {
    OscillatoryProblem pr = benchmark_problem(L);
    CutpointExpansion ex = expand_cutpoint(pr, 0.5 * L);
    for (double w : {10.0, 100.0, 1000.0, 10000.0}) {
      Complex I = oscillatory_integral(pr, w, qs);
      ++points;
      if (std::abs(I - ex.evaluate(w)) > ex.bound_total(w) * (1.0 + 1e-6)) ++bound_bad;
      double ratio = std::abs(I) / (0.75 * std::pow(L, 0.75));
      worst_cap = std::max(worst_cap, ratio);
      if (ratio > 1.0) ++cap_bad;
    }
  }
  std::snprintf(buf, sizeof buf,
                "lossless bound %d/%d ok; cap |I| <= (3/4)(p2-p1)^{3/4} violated at %d/%d "
                "points (worst |I|/cap = %.3f; the elementary cap is (4/3)(p2-p1)^{3/4})",
                points - bound_bad, points, cap_bad, points, worst_cap);
  return {bound_bad == 0 && cap_bad == 0, buf};
}

// --- 6. smooth vs cut-point blow-up contrast ----------------------------------
Outcome criterion6() {
  double w = 1000.0;
  std::vector<double> ratios;
  for (int m = 0; m <= 6; ++m) {
    double L = std::pow(2.0, -m);
    OscillatoryProblem pr = benchmark_problem(L);
    double smooth = erdelyi_expand(pr, 1, L / 4.0).bound_total(w);
    double cut = expand_cutpoint(pr, 0.5 * L).bound_total(w);
    ratios.push_back(smooth / cut);
  }
  bool monotone = true;
  for (std::size_t i = 1; i < ratios.size(); ++i)
    monotone = monotone && ratios[i] >= ratios[i - 1];
  double growth = ratios.back() / ratios.front();
  std::snprintf(buf, sizeof buf,
                "ratio m=0..6: %.3f -> %.3f (growth %.3fx, need monotone and >= 10x); "
                "measured ratio DECREASES: cut-point R2 terms blow up faster at fixed omega",
                ratios.front(), ratios.back(), growth);
  return {monotone && growth >= 10.0, buf};
}

// --- 7. quadratic-phase explicit ledgers ---------------------------------------
Outcome criterion7() {
  QuadratureSettings qs = oracle_tol();
  int bad = 0, points = 0;
  bool structure_ok = true;
  for (double mu : {0.25, 0.5, 0.75}) {
    for (double L : {1.0, 0.5, 0.125}) {
      for (double frac : {0.25, 0.5, 0.75}) {
        OscillatoryProblem pr = interior_stationary_problem(mu, frac, L);
        QuadraticExpansion qx = expand_full(pr);
        std::size_t expect = (mu == 0.5) ? 8 : 9;
        structure_ok = structure_ok && qx.ledger.size() == expect;
        for (const auto& e : qx.ledger) structure_ok = structure_ok && e.beta > -qx.leading_decay();
        for (double w : {10.0, 100.0, 1000.0, 10000.0}) {
          Complex I = oscillatory_integral(pr, w, qs);
          ++points;
          if (std::abs(I - qx.evaluate_leading(w)) > qx.bound(w) * (1.0 + 1e-6)) ++bad;
        }
      }
    }
  }
  std::snprintf(buf, sizeof buf,
                "ledger bounds %d/%d ok; sizes 9/8/9 and beta~ ordering %s", points - bad,
                points, structure_ok ? "ok" : "VIOLATED");
  return {bad == 0 && structure_ok, buf};
}

// --- 8. curve regime dominance --------------------------------------------------
Outcome criterion8() {
  QuadratureSettings qs = oracle_tol();
  bool ok = true;
  std::string detail;
  for (double mu : {0.25, 0.5, 0.75}) {
    for (double eps : {0.1, 0.3}) {
      OscillatoryProblem family = interior_stationary_problem(mu, 0.5, 1.0);
      CurveRegime cr = curve_regime(family, eps);
      std::vector<double> ws = log_sweep(100.0, 1e5, 12), rs;
      for (double w : ws) {
        OscillatoryProblem pr = family;
        pr.phase = PhaseSpec::quadratic(cr.p0_at(w), family.phase.quadratic().c);
        rs.push_back(std::abs(oscillatory_integral(pr, w, qs) - cr.leading_value(w)));
      }
      FitResult fr = fit_decay(ws, rs);
      bool steeper = fr.slope <= cr.leading_exponent - 0.02;
      ok = ok && steeper && cr.dominance;
      std::snprintf(buf, sizeof buf, " [mu=%.2f eps=%.1f residual slope %.3f vs lead %.3f%s]",
                    mu, eps, fr.slope, cr.leading_exponent, cr.dominance ? "" : " NO-CERT");
      detail += buf;
    }
  }
  return {ok, "residual decays steeper than the leading term by >= 0.02;" + detail};
}

// --- 9. critical-line decay and normalization ------------------------------------
Outcome criterion9() {
  QuadratureSettings qs = oracle_tol();
  bool ok = true;
  std::string detail;
  for (double mu : {0.25, 0.5, 0.75}) {
    InitialData d = datum(mu);
    std::vector<double> ts = log_sweep(100.0, 1e4, 12), mags, zetas;
    int bound_bad = 0;
    for (double t : ts) {
      Complex u = u_oracle(d, t, 2.0 * d.p1 * t, qs);
      mags.push_back(std::abs(u));
      double Lmu = std::abs(0.5 * gamma_real(mu / 2.0) * d.utilde(d.p1, 0));
      zetas.push_back(std::abs(u) * std::pow(t, mu / 2.0) / Lmu);
      RegimeReport rep = critical_line_expansion(d, t);  // frozen zeta = 1/(2 pi)
      if (std::abs(u - rep.leading_value(t)) > rep.bound(t) * (1.0 + 1e-6)) ++bound_bad;
    }
    FitResult fr = fit_decay(ts, mags);
    bool slope_ok = std::abs(fr.slope - (-0.5 * mu)) <= 0.03;

    // The ratio |u| t^{mu/2}/|L_mu| converges to zeta like t^{-1/2} (the
    // boundary term of the remainder); the derived zeta is the extrapolated
    // limit, computed from every decade-separated pair across the sweep.
    double worst_zeta = 0.0, worst_raw = 0.0;
    for (std::size_t i = 0; i + 12 < ts.size(); ++i) {
      double za = zetas[i], zb = zetas[i + 12];
      double extrap = zb + (zb - za) / (std::sqrt(10.0) - 1.0);
      worst_zeta = std::max(worst_zeta,
                            std::abs(extrap - critical_line_zeta) / critical_line_zeta);
    }
    for (double z : zetas)
      worst_raw = std::max(worst_raw, std::abs(z - critical_line_zeta) / critical_line_zeta);
    bool zeta_ok = worst_zeta <= 0.01;
    ok = ok && slope_ok && zeta_ok && bound_bad == 0;
    std::snprintf(buf, sizeof buf,
                  " [mu=%.2f slope %.4f (want %.4f+-0.03), derived-zeta dev %.3f%% "
                  "(raw transient %.1f%%), bound %d/%zu]",
                  mu, fr.slope, -0.5 * mu, 100.0 * worst_zeta, 100.0 * worst_raw,
                  static_cast<int>(ts.size()) - bound_bad, ts.size());
    detail += buf;
  }
  return {ok, "slope, zeta limit, and frozen-zeta bound:" + detail};
}

// --- 10. cone expansion ------------------------------------------------------------
Outcome criterion10() {
  QuadratureSettings qs = oracle_tol();
  InitialData d = datum(0.75);
  double eps = 0.25;
  int bad = 0, points = 0;
  for (double t : {100.0, 1000.0}) {
    for (int k = 1; k <= 9; ++k) {
      double p = (d.p1 + eps) + k * (d.p2 - d.p1 - eps) / 10.0;
      double x = 2.0 * p * t;
      RegimeReport rep = cone_expansion(d, eps, t, x);
      Complex u = u_oracle(d, t, x, qs);
      ++points;
      if (std::abs(u - rep.leading_value(t)) > rep.bound(t) * (1.0 + 1e-6)) ++bad;
    }
  }
  std::vector<double> ts = log_sweep(100.0, 1e4, 12), mags;
  for (double t : ts) mags.push_back(std::abs(u_oracle(d, t, 2.0 * 1.5 * t, qs)));
  FitResult fr = fit_decay(ts, mags);
  bool slope_ok = std::abs(fr.slope - (-0.5)) <= 0.02;
  std::snprintf(buf, sizeof buf, "bound %d/%d ok at 9 cone points x {1e2,1e3}; slope along "
                "x=3t: %.4f (want -0.5+-0.02)", points - bad, points, fr.slope);
  return {bad == 0 && slope_ok, buf};
}

// --- 11. windowed energy -------------------------------------------------------
Outcome criterion11() {
  InitialData d = datum(0.75);
  EnergyWindow ew = energy_window(d, 0.1, 1000.0, oracle_tol());
  double diff = std::abs(ew.windowed - ew.limit);
  bool ok = diff <= ew.bound && diff <= 0.02 * ew.limit;
  std::snprintf(buf, sizeof buf,
                "|windowed - limit| = %.3e (bound %.3e, 2%% of limit = %.3e)", diff,
                ew.bound, 0.02 * ew.limit);
  return {ok, buf};
}

// --- 12. region bound optimality ---------------------------------------------------
Outcome criterion12() {
  QuadratureSettings qs = oracle_tol();
  InitialData d = datum(0.25);
  bool ok = true;
  std::string detail;
  for (double eps : {0.1, 0.3}) {
    int bad = 0, points = 0;
    for (int i = 0; i < 10; ++i) {
      double t = 100.0 * std::pow(100.0, i / 9.0);
      double edge = 2.0 * d.p1 + 2.0 * std::pow(t, -eps);
      for (int k = 0; k < 5; ++k) {
        double y = edge + (2.0 * d.p2 - edge) * (0.02 + 0.95 * k / 4.0);
        double x = y * t;
        RegionBound rb = region_uniform_bound(d, eps, t, x);
        ++points;
        if (std::abs(u_oracle(d, t, x, qs)) > rb.value * (1.0 + 1e-6)) ++bad;
      }
    }
    std::vector<double> ts = log_sweep(100.0, 1e4, 12), mags;
    for (double t : ts)
      mags.push_back(std::abs(u_oracle(d, t, Curve{d.p1, eps}.x_at(t), qs)));
    FitResult fr = fit_decay(ts, mags);
    double want = -d.mu + eps * d.mu;
    bool slope_ok = std::abs(fr.slope - want) <= 0.03;
    ok = ok && bad == 0 && slope_ok;
    std::snprintf(buf, sizeof buf, " [eps=%.1f bound %d/%d, boundary slope %.4f (want %.4f+-0.03)]",
                  eps, points - bad, points, fr.slope, want);
    detail += buf;
  }
  return {ok, "uniform bound on 50 region points; rate attained on the boundary:" + detail};
}

// --- 13. Plancherel ---------------------------------------------------------------
Outcome criterion13() {
  InitialData d = datum(0.75);
  double ref = l2_norm_reference(d);
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0, worst_ref = 0.0;
  for (double t : {1.0, 10.0, 100.0}) {
    double n = l2_norm_wide(d, t, oracle_tol());
    lo = std::min(lo, n);
    hi = std::max(hi, n);
    worst_ref = std::max(worst_ref, std::abs(n - ref) / ref);
  }
  double spread = (hi - lo) / (0.5 * (hi + lo));
  bool ok = spread <= 0.01 && worst_ref <= 0.01;
  std::snprintf(buf, sizeof buf,
                "norm spread over t in {1,10,100}: %.3f%% (tol 1%%); worst deviation from "
                "(1/sqrt(2pi))||Fu0|| = %.3f%%",
                100.0 * spread, 100.0 * worst_ref);
  return {ok, buf};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"ray-integral closed form", criterion1},
      {"primitive recursion of the ray integrals", criterion2},
      {"exponential bound along the rays", criterion3},
      {"balance constants and envelope", criterion4},
      {"lossless cut-point bound + benchmark magnitude cap", criterion5},
      {"smooth vs cut-point blow-up contrast", criterion6},
      {"quadratic-phase explicit ledgers", criterion7},
      {"curve regime dominance", criterion8},
      {"critical-line decay and normalization", criterion9},
      {"cone expansion", criterion10},
      {"windowed energy", criterion11},
      {"region bound optimality", criterion12},
      {"Plancherel conservation on a wide grid", criterion13},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("criterion %2zu [%s] %s: %s\n", i + 1, o.pass ? "PASS" : "FAIL",
                criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures;
}
