#ifndef PHASEKIT_RUNNER_HPP
#define PHASEKIT_RUNNER_HPP

#include <thread>

#include "phasekit/config.hpp"
#include "phasekit/cutpoint.hpp"
#include "phasekit/erdelyi.hpp"
#include "phasekit/oracle.hpp"
#include "phasekit/quadratic.hpp"
#include "phasekit/report.hpp"
#include "phasekit/schrodinger.hpp"

namespace phasekit {

inline constexpr double bound_slack = 1e-6;  // covers quadrature noise only

struct SweepResult {
  std::vector<SweepRow> rows;
  SweepSummary summary;
};

namespace detail {

// Evaluates one row: oracle, leading-term approximation, bound.
struct RowEvaluator {
  std::function<Complex(double)> oracle;
  std::function<Complex(double)> approx;
  std::function<double(double)> bound;
  std::function<SweepRow(double)> whole_row;  // overrides the three when set
  double leading_exponent = 0.0;

  SweepRow eval(double param) const {
    if (whole_row) {
      SweepRow r = whole_row(param);
      r.leading_exponent = leading_exponent;
      return r;
    }
    SweepRow r;
    r.param = param;
    r.oracle = oracle(param);
    r.approx = approx(param);
    r.abs_err = std::abs(r.oracle - r.approx);
    r.bound_value = bound(param);
    r.bound_ok = r.abs_err <= r.bound_value * (1.0 + bound_slack);
    r.leading_exponent = leading_exponent;
    return r;
  }
};

inline RowEvaluator make_evaluator(const RunConfig& cfg) {
  RowEvaluator ev;
  QuadratureSettings qs = cfg.tolerances;

  if (cfg.mode == "expand") {
    const OscillatoryProblem pr = *cfg.problem;
    double eta = cfg.eta > 0.0 ? cfg.eta : 0.25 * (pr.p2 - pr.p1);
    auto ex = std::make_shared<ErdelyiExpansion>(erdelyi_expand(pr, cfg.N, eta, cfg.gamma));
    ev.oracle = [pr, qs](double w) { return oscillatory_integral(pr, w, qs); };
    ev.approx = [ex](double w) { return ex->evaluate(w); };
    ev.bound = [ex](double w) { return ex->bound_total(w); };
    double e1 = ex->side1.terms.front().omega_exponent;
    double e2 = ex->side2.terms.front().omega_exponent;
    ev.leading_exponent = std::max(e1, e2);
  } else if (cfg.mode == "cutpoint") {
    const OscillatoryProblem pr = *cfg.problem;
    double q = pr.p1 + cfg.q_fraction * (pr.p2 - pr.p1);
    auto ex = std::make_shared<CutpointExpansion>(expand_cutpoint(pr, q, cfg.gamma));
    ev.oracle = [pr, qs](double w) { return oscillatory_integral(pr, w, qs); };
    ev.approx = [ex](double w) { return ex->evaluate(w); };
    ev.bound = [ex](double w) { return ex->bound_total(w); };
    ev.leading_exponent = std::max(ex->s1.a_omega_exponent, ex->s2.a_omega_exponent);
  } else if (cfg.mode == "quadratic") {
    const OscillatoryProblem pr = *cfg.problem;
    auto ex = std::make_shared<QuadraticExpansion>(expand_full(pr, cfg.delta));
    ev.oracle = [pr, qs](double w) { return oscillatory_integral(pr, w, qs); };
    ev.approx = [ex](double w) { return ex->evaluate_leading(w); };
    ev.bound = [ex](double w) { return ex->bound(w); };
    ev.leading_exponent = ex->leading_decay();
  } else if (cfg.mode == "curve") {
    const OscillatoryProblem family = *cfg.problem;
    auto cr = std::make_shared<CurveRegime>(curve_regime(family, cfg.epsilon, cfg.delta));
    ev.oracle = [family, cr, qs](double w) {
      if (!(w > cr->omega_threshold))
        throw std::domain_error("curve mode: omega below the validity threshold");
      OscillatoryProblem pr = family;
      pr.phase = PhaseSpec::quadratic(cr->p0_at(w), family.phase.quadratic().c);
      return oscillatory_integral(pr, w, qs);
    };
    ev.approx = [cr](double w) { return cr->leading_value(w); };
    ev.bound = [cr](double w) { return cr->bound(w); };
    ev.leading_exponent = cr->leading_exponent;
  } else if (cfg.mode == "schrodinger") {
    const InitialData d = *cfg.initial_data;
    const double eps = cfg.epsilon, v = cfg.velocity, zeta = cfg.zeta;
    const std::string regime = cfg.regime;
    auto x_of = [d, eps, v, regime](double t) {
      if (regime == "critical") return 2.0 * d.p1 * t;
      if (regime == "boundary") return Curve{d.p1, eps}.x_at(t);
      return 2.0 * v * t;  // cone / outside lines
    };
    ev.oracle = [d, qs, x_of](double t) { return u_oracle(d, t, x_of(t), qs); };
    auto report = [d, eps, zeta, regime, x_of](double t) {
      if (regime == "critical") return critical_line_expansion(d, t, zeta);
      if (regime == "boundary") return boundary_curve_expansion(d, eps, t);
      if (regime == "outside") return outside_cone_expansion(d, eps, t, x_of(t));
      return cone_expansion(d, eps, t, x_of(t));
    };
    ev.approx = [report](double t) { return report(t).leading_value(t); };
    ev.bound = [report](double t) { return report(t).bound(t); };
    // Exponent from a representative report (t chosen positive & valid later).
    ev.leading_exponent = 0.0;
  } else if (cfg.mode == "energy") {
    const InitialData d = *cfg.initial_data;
    const double eps = cfg.epsilon;
    ev.whole_row = [d, eps, qs](double t) {
      EnergyWindow ew = energy_window(d, eps, t, qs);
      SweepRow r;
      r.param = t;
      r.oracle = Complex(ew.windowed);
      r.approx = Complex(ew.limit);
      r.abs_err = std::abs(ew.windowed - ew.limit);
      r.bound_value = ew.bound;
      r.bound_ok = r.abs_err <= r.bound_value * (1.0 + bound_slack);
      return r;
    };
    ev.leading_exponent = 0.0;
  } else {
    throw std::invalid_argument("run_sweep: unsupported mode " + cfg.mode);
  }
  return ev;
}

}  // namespace detail

/// Runs the configured sweep. Rows are evaluated independently (optionally on
/// several threads) and emitted in ascending parameter order.
inline SweepResult run_sweep(const RunConfig& cfg, int jobs = 1) {
  detail::RowEvaluator ev = detail::make_evaluator(cfg);
  if (cfg.mode == "schrodinger" && !cfg.sweep.empty()) {
    // Resolve the regime's leading exponent once, at the first sweep point.
    const InitialData& d = *cfg.initial_data;
    double t0 = cfg.sweep.front();
    if (cfg.regime == "critical")
      ev.leading_exponent = -0.5 * d.mu;
    else if (cfg.regime == "boundary")
      ev.leading_exponent = boundary_curve_expansion(d, cfg.epsilon, t0).leading_exponent;
    else if (cfg.regime == "outside")
      ev.leading_exponent = -d.mu;
    else
      ev.leading_exponent = cone_expansion(d, cfg.epsilon, t0, 2.0 * cfg.velocity * t0).leading_exponent;
  }

  SweepResult res;
  res.rows.resize(cfg.sweep.size());
  jobs = std::max(1, jobs);
  if (jobs == 1 || cfg.sweep.size() < 2) {
    for (std::size_t i = 0; i < cfg.sweep.size(); ++i) res.rows[i] = ev.eval(cfg.sweep[i]);
  } else {
    std::vector<std::thread> pool;
    std::size_t n = cfg.sweep.size();
    for (int w = 0; w < jobs; ++w) {
      pool.emplace_back([&, w]() {
        for (std::size_t i = w; i < n; i += jobs) res.rows[i] = ev.eval(cfg.sweep[i]);
      });
    }
    for (auto& th : pool) th.join();
  }

  res.summary.mode = cfg.mode;
  res.summary.rows = static_cast<int>(res.rows.size());
  for (const auto& r : res.rows)
    if (!r.bound_ok) ++res.summary.bound_violations;
  if (res.rows.size() >= 3) {
    bool positive = true;
    for (const auto& r : res.rows) positive = positive && std::abs(r.oracle) > 0.0;
    if (positive) {
      FitResult fr = fit_decay(res.rows, SweepColumn::OracleAbs);
      res.summary.fitted_slope = fr.slope;
      res.summary.fit_intercept = fr.intercept;
      res.summary.fit_max_residual = fr.max_residual;
    }
  }
  return res;
}

/// Writes the report in the configured format. For plotscript, the CSV data
/// file is emitted alongside and the script references it.
inline void emit_report(const SweepResult& res, const std::string& format,
                        const std::string& path) {
  if (format == "csv") {
    write_file(path, to_csv(res.rows));
  } else if (format == "json") {
    write_file(path, to_json_report(res.rows, res.summary));
  } else if (format == "plotscript") {
    std::string csv_path = path + ".csv";
    write_file(csv_path, to_csv(res.rows));
    write_file(path, to_plotscript(csv_path, res.summary));
  } else {
    throw std::invalid_argument("emit_report: unknown format " + format);
  }
}

}  // namespace phasekit

#endif  // PHASEKIT_RUNNER_HPP
