#ifndef PHASEKIT_CONFIG_HPP
#define PHASEKIT_CONFIG_HPP

#include <algorithm>
#include <fstream>
#include <memory>
#include <optional>

#include "json.hpp"
#include "phasekit/model.hpp"
#include "phasekit/schrodinger.hpp"

namespace phasekit {

/// Config/schema failure with JSON-pointer context for every complaint.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> issues)
      : std::runtime_error(join(issues)), issues(std::move(issues)) {}
  std::vector<std::string> issues;

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string s = "config error:";
    for (const auto& i : v) s += "\n  " + i;
    return s;
  }
};

struct RunConfig {
  std::string mode;  // expand|cutpoint|quadratic|curve|schrodinger|energy|verify
  std::optional<OscillatoryProblem> problem;
  std::optional<InitialData> initial_data;
  std::vector<double> sweep;

  // mode parameters
  int N = 1;
  double eta = -1.0;        // default (p2-p1)/4
  double q_fraction = 0.5;  // cut position as a quantile of (p1, p2)
  double gamma = 0.5;
  double delta = -1.0;      // default chosen per module
  double epsilon = 0.25;
  double velocity = 0.0;    // x = 2 * velocity * t lines (schrodinger)
  std::string regime = "critical";  // cone|critical|outside|boundary
  double zeta = critical_line_zeta;

  QuadratureSettings tolerances{1e-9, 1e-13, 20000, 1.0};

  std::string out;
  std::string format = "csv";  // csv|json|plotscript

  // verify mode
  std::string fixture;
  std::shared_ptr<RunConfig> verify_run;
};

namespace detail {

// Accepts JSON numbers or decimal strings (17-digit fidelity).
inline double as_number(const nlohmann::json& j, const std::string& ptr,
                        std::vector<std::string>& issues) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    try {
      std::size_t pos = 0;
      double v = std::stod(j.get<std::string>(), &pos);
      if (pos == j.get<std::string>().size()) return v;
    } catch (...) {
    }
  }
  issues.push_back(ptr + ": expected a number");
  return 0.0;
}

inline std::vector<double> as_coeffs(const nlohmann::json& j, const std::string& ptr,
                                     std::vector<std::string>& issues) {
  std::vector<double> c;
  if (!j.is_array() || j.empty()) {
    issues.push_back(ptr + ": expected a nonempty coefficient array");
    return {0.0};
  }
  for (std::size_t i = 0; i < j.size(); ++i)
    c.push_back(as_number(j[i], ptr + "/" + std::to_string(i), issues));
  return c;
}

inline OscillatoryProblem parse_problem(const nlohmann::json& j, const std::string& ptr,
                                        std::vector<std::string>& issues) {
  OscillatoryProblem pr;
  if (!j.is_object()) {
    issues.push_back(ptr + ": expected an object");
    return pr;
  }
  if (!j.contains("p1") || !j.contains("p2")) issues.push_back(ptr + ": p1 and p2 required");
  pr.p1 = j.contains("p1") ? as_number(j["p1"], ptr + "/p1", issues) : 0.0;
  pr.p2 = j.contains("p2") ? as_number(j["p2"], ptr + "/p2", issues) : 1.0;

  if (!j.contains("amplitude")) {
    issues.push_back(ptr + ": amplitude required");
  } else {
    const auto& a = j["amplitude"];
    pr.amplitude.mu1 = a.contains("mu1") ? as_number(a["mu1"], ptr + "/amplitude/mu1", issues) : 1.0;
    pr.amplitude.mu2 = a.contains("mu2") ? as_number(a["mu2"], ptr + "/amplitude/mu2", issues) : 1.0;
    if (!(pr.amplitude.mu1 > 0.0 && pr.amplitude.mu1 <= 1.0))
      issues.push_back(ptr + "/amplitude/mu1: mu1 outside (0,1]");
    if (!(pr.amplitude.mu2 > 0.0 && pr.amplitude.mu2 <= 1.0))
      issues.push_back(ptr + "/amplitude/mu2: mu2 outside (0,1]");
    if (a.contains("u_tilde"))
      pr.amplitude.regular_part =
          SmoothFn::polynomial(as_coeffs(a["u_tilde"], ptr + "/amplitude/u_tilde", issues));
  }

  if (!j.contains("phase")) {
    issues.push_back(ptr + ": phase required");
  } else {
    const auto& ph = j["phase"];
    std::string type = ph.value("type", "quadratic");
    if (type == "quadratic") {
      double p0 = ph.contains("p0") ? as_number(ph["p0"], ptr + "/phase/p0", issues) : pr.p2;
      double c = ph.contains("c") ? as_number(ph["c"], ptr + "/phase/c", issues) : 0.0;
      pr.phase = PhaseSpec::quadratic(p0, c);
    } else if (type == "general") {
      double rho1 = ph.contains("rho1") ? as_number(ph["rho1"], ptr + "/phase/rho1", issues) : 1.0;
      double rho2 = ph.contains("rho2") ? as_number(ph["rho2"], ptr + "/phase/rho2", issues) : 1.0;
      SmoothFn pt = ph.contains("psi_tilde")
                        ? SmoothFn::polynomial(as_coeffs(ph["psi_tilde"], ptr + "/phase/psi_tilde", issues))
                        : SmoothFn::constant(1.0);
      double psi_p1 = ph.contains("psi_p1") ? as_number(ph["psi_p1"], ptr + "/phase/psi_p1", issues) : 0.0;
      OscillatoryProblem tmp = pr;
      tmp.phase = PhaseSpec::general(rho1, rho2, pt, psi_p1, 0.0);
      double psi_p2 = psi_p1;
      if (issues.empty()) psi_p2 = eval_phase(tmp, pr.p2, 0);
      pr.phase = PhaseSpec::general(rho1, rho2, pt, psi_p1, psi_p2);
    } else {
      issues.push_back(ptr + "/phase/type: must be 'quadratic' or 'general'");
    }
  }

  if (issues.empty()) {
    ValidationReport rep = validate_problem(pr);
    for (const auto& v : rep.violations) issues.push_back(ptr + ": " + v);
  }
  return pr;
}

inline InitialData parse_initial_data(const nlohmann::json& j, const std::string& ptr,
                                      std::vector<std::string>& issues) {
  InitialData d;
  if (!j.is_object()) {
    issues.push_back(ptr + ": expected an object");
    return d;
  }
  double mu = j.contains("mu") ? as_number(j["mu"], ptr + "/mu", issues) : 0.75;
  double p1 = j.contains("p1") ? as_number(j["p1"], ptr + "/p1", issues) : 0.0;
  double p2 = j.contains("p2") ? as_number(j["p2"], ptr + "/p2", issues) : 1.0;
  std::vector<double> coeffs = j.contains("u_tilde")
                                   ? as_coeffs(j["u_tilde"], ptr + "/u_tilde", issues)
                                   : std::vector<double>{1.0};
  if (!(mu > 0.0 && mu < 1.0)) issues.push_back(ptr + "/mu: mu outside (0,1)");
  if (!(p1 < p2)) issues.push_back(ptr + ": p1 must be strictly less than p2");
  if (!issues.empty()) return d;
  d = InitialData::make(mu, p1, p2, coeffs);
  ValidationReport rep = validate_data(d);
  for (const auto& v : rep.violations) issues.push_back(ptr + ": " + v);
  return d;
}

inline std::vector<double> parse_sweep(const nlohmann::json& j, const std::string& ptr,
                                       std::vector<std::string>& issues) {
  std::vector<double> values;
  if (j.contains("values")) {
    for (std::size_t i = 0; i < j["values"].size(); ++i)
      values.push_back(as_number(j["values"][i], ptr + "/values/" + std::to_string(i), issues));
  } else if (j.contains("from") && j.contains("to")) {
    double from = as_number(j["from"], ptr + "/from", issues);
    double to = as_number(j["to"], ptr + "/to", issues);
    double ppd = j.contains("points_per_decade")
                     ? as_number(j["points_per_decade"], ptr + "/points_per_decade", issues)
                     : 12.0;
    if (from > 0.0 && to > from && ppd > 0.0) {
      int n = std::min(59, static_cast<int>(std::ceil(std::log10(to / from) * ppd)));
      for (int i = 0; i <= n; ++i)
        values.push_back(from * std::pow(to / from, static_cast<double>(i) / n));
    } else {
      issues.push_back(ptr + ": need 0 < from < to and points_per_decade > 0");
    }
  } else {
    issues.push_back(ptr + ": provide either values[] or from/to");
  }
  for (std::size_t i = 0; i + 1 < values.size(); ++i)
    if (!(values[i] > 0.0) || !(values[i] < values[i + 1])) {
      issues.push_back(ptr + ": sweep values must be positive and ascending");
      break;
    }
  if (!values.empty() && !(values.front() > 0.0))
    issues.push_back(ptr + ": sweep values must be positive");
  return values;
}

inline RunConfig parse_config(const nlohmann::json& j, std::vector<std::string>& issues);

}  // namespace detail

inline RunConfig detail::parse_config(const nlohmann::json& j,
                                      std::vector<std::string>& issues) {
  RunConfig cfg;
  if (!j.is_object()) {
    issues.push_back("/: expected a JSON object");
    return cfg;
  }
  static const std::vector<std::string> modes = {
      "expand", "cutpoint", "quadratic", "curve", "schrodinger", "energy", "verify"};
  cfg.mode = j.value("mode", "");
  if (std::find(modes.begin(), modes.end(), cfg.mode) == modes.end())
    issues.push_back("/mode: must be one of expand|cutpoint|quadratic|curve|schrodinger|energy|verify");

  if (cfg.mode == "verify") {
    if (!j.contains("fixture") || !j["fixture"].is_string())
      issues.push_back("/fixture: required for verify mode");
    else
      cfg.fixture = j["fixture"].get<std::string>();
    if (!j.contains("run")) {
      issues.push_back("/run: verify mode needs the embedded run config");
    } else {
      auto sub = std::make_shared<RunConfig>(parse_config(j["run"], issues));
      if (sub->mode == "verify") issues.push_back("/run/mode: nested verify not allowed");
      cfg.verify_run = sub;
    }
    cfg.out = j.value("out", "");
    return cfg;
  }

  const bool wants_data = (cfg.mode == "schrodinger" || cfg.mode == "energy");
  if (wants_data) {
    if (!j.contains("initial_data"))
      issues.push_back("/initial_data: required for mode " + cfg.mode);
    else
      cfg.initial_data = detail::parse_initial_data(j["initial_data"], "/initial_data", issues);
  } else {
    if (!j.contains("problem"))
      issues.push_back("/problem: required for mode " + cfg.mode);
    else
      cfg.problem = detail::parse_problem(j["problem"], "/problem", issues);
  }

  if (!j.contains("sweep"))
    issues.push_back("/sweep: required");
  else
    cfg.sweep = detail::parse_sweep(j["sweep"], "/sweep", issues);

  if (j.contains("N")) {
    cfg.N = static_cast<int>(detail::as_number(j["N"], "/N", issues));
    if (cfg.N < 1 || cfg.N > 3) issues.push_back("/N: must be 1, 2 or 3");
  }
  if (j.contains("eta")) cfg.eta = detail::as_number(j["eta"], "/eta", issues);
  if (j.contains("q_fraction")) {
    cfg.q_fraction = detail::as_number(j["q_fraction"], "/q_fraction", issues);
    if (!(cfg.q_fraction > 0.0 && cfg.q_fraction < 1.0))
      issues.push_back("/q_fraction: must lie in (0, 1)");
  }
  if (j.contains("gamma")) {
    cfg.gamma = detail::as_number(j["gamma"], "/gamma", issues);
    if (!(cfg.gamma > 0.0 && cfg.gamma < 1.0)) issues.push_back("/gamma: must lie in (0, 1)");
  }
  if (j.contains("delta")) cfg.delta = detail::as_number(j["delta"], "/delta", issues);
  if (j.contains("epsilon")) {
    cfg.epsilon = detail::as_number(j["epsilon"], "/epsilon", issues);
    if (cfg.mode == "curve" && !(cfg.epsilon > 0.0 && cfg.epsilon < 0.5))
      issues.push_back("/epsilon: epsilon must lie in (0, 1/2)");
    else if (!(cfg.epsilon > 0.0))
      issues.push_back("/epsilon: must be positive");
  }
  if (j.contains("velocity")) cfg.velocity = detail::as_number(j["velocity"], "/velocity", issues);
  if (j.contains("regime")) {
    cfg.regime = j["regime"].get<std::string>();
    static const std::vector<std::string> regimes = {"cone", "critical", "outside", "boundary"};
    if (std::find(regimes.begin(), regimes.end(), cfg.regime) == regimes.end())
      issues.push_back("/regime: must be cone|critical|outside|boundary");
  }
  if (j.contains("zeta")) cfg.zeta = detail::as_number(j["zeta"], "/zeta", issues);
  if (j.contains("tolerances")) {
    const auto& t = j["tolerances"];
    if (t.contains("rel")) cfg.tolerances.rel_tol = detail::as_number(t["rel"], "/tolerances/rel", issues);
    if (t.contains("abs")) cfg.tolerances.abs_tol = detail::as_number(t["abs"], "/tolerances/abs", issues);
    if (t.contains("max_subdivisions"))
      cfg.tolerances.max_subdivisions =
          static_cast<int>(detail::as_number(t["max_subdivisions"], "/tolerances/max_subdivisions", issues));
    if (!(cfg.tolerances.rel_tol > 0.0) || !(cfg.tolerances.abs_tol > 0.0))
      issues.push_back("/tolerances: tolerances must be positive");
    if (cfg.tolerances.max_subdivisions < 1)
      issues.push_back("/tolerances/max_subdivisions: must be >= 1");
  }
  cfg.out = j.value("out", "");
  if (j.contains("format")) {
    cfg.format = j["format"].get<std::string>();
    if (cfg.format != "csv" && cfg.format != "json" && cfg.format != "plotscript")
      issues.push_back("/format: must be csv|json|plotscript");
  }

  // Mode-specific extras.
  if (cfg.mode == "curve" && cfg.problem && issues.empty()) {
    if (!cfg.problem->phase.is_quadratic())
      issues.push_back("/problem/phase: curve mode needs a quadratic phase family");
  }
  return cfg;
}

inline RunConfig parse_config_json(const nlohmann::json& j) {
  std::vector<std::string> issues;
  RunConfig cfg = detail::parse_config(j, issues);
  if (!issues.empty()) throw ConfigError(std::move(issues));
  return cfg;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot open config file: " + path});
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError({std::string("JSON parse failure: ") + e.what()});
  }
  return parse_config_json(j);
}

}  // namespace phasekit

#endif  // PHASEKIT_CONFIG_HPP
