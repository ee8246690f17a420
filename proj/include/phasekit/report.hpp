#ifndef PHASEKIT_REPORT_HPP
#define PHASEKIT_REPORT_HPP

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "phasekit/types.hpp"

namespace phasekit {

/// One sweep evaluation: oracle vs leading-term approximation plus the
/// attached remainder bound at this parameter value.
struct SweepRow {
  double param = 0.0;  // omega or t
  Complex oracle;
  Complex approx;
  double abs_err = 0.0;
  double bound_value = 0.0;
  bool bound_ok = false;
  double leading_exponent = 0.0;
};

struct SweepSummary {
  std::string mode;
  int rows = 0;
  int bound_violations = 0;
  double fitted_slope = 0.0;
  double fit_intercept = 0.0;
  double fit_max_residual = 0.0;
};

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
};

/// Least squares of log(value) against log(param). Values must be positive.
inline FitResult fit_decay(const std::vector<double>& params,
                           const std::vector<double>& values) {
  if (params.size() != values.size() || params.size() < 3)
    throw std::invalid_argument("fit_decay: need at least 3 rows");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (!(values[i] > 0.0) || !(params[i] > 0.0))
      throw std::domain_error("fit_decay: values and params must be positive");
    double x = std::log(params[i]), y = std::log(values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  FitResult fr;
  fr.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fr.intercept = (sy - fr.slope * sx) / n;
  for (std::size_t i = 0; i < params.size(); ++i) {
    double r = std::log(values[i]) - (fr.intercept + fr.slope * std::log(params[i]));
    fr.max_residual = std::max(fr.max_residual, std::abs(r));
  }
  return fr;
}

enum class SweepColumn { OracleAbs, ApproxAbs, AbsErr, Bound };

inline FitResult fit_decay(const std::vector<SweepRow>& rows, SweepColumn col) {
  std::vector<double> xs, ys;
  xs.reserve(rows.size());
  ys.reserve(rows.size());
  for (const auto& r : rows) {
    xs.push_back(r.param);
    switch (col) {
      case SweepColumn::OracleAbs: ys.push_back(std::abs(r.oracle)); break;
      case SweepColumn::ApproxAbs: ys.push_back(std::abs(r.approx)); break;
      case SweepColumn::AbsErr: ys.push_back(r.abs_err); break;
      case SweepColumn::Bound: ys.push_back(r.bound_value); break;
    }
  }
  return fit_decay(xs, ys);
}

namespace detail {

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace detail

inline const char* csv_header() {
  return "param,oracle_re,oracle_im,oracle_abs,approx_re,approx_im,abs_err,bound,"
         "bound_ok,exponent";
}

inline std::string to_csv(const std::vector<SweepRow>& rows) {
  std::string out = csv_header();
  out += '\n';
  for (const auto& r : rows) {
    out += detail::fmt17(r.param) + ',' + detail::fmt17(r.oracle.real()) + ',' +
           detail::fmt17(r.oracle.imag()) + ',' + detail::fmt17(std::abs(r.oracle)) +
           ',' + detail::fmt17(r.approx.real()) + ',' + detail::fmt17(r.approx.imag()) +
           ',' + detail::fmt17(r.abs_err) + ',' + detail::fmt17(r.bound_value) + ',' +
           (r.bound_ok ? "1" : "0") + ',' + detail::fmt17(r.leading_exponent) + '\n';
  }
  return out;
}

inline std::vector<SweepRow> parse_csv(const std::string& text) {
  std::vector<SweepRow> rows;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("parse_csv: empty input");
  if (line != csv_header()) throw std::invalid_argument("parse_csv: unexpected header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    std::vector<double> v;
    while (std::getline(ls, cell, ',')) v.push_back(std::stod(cell));
    if (v.size() != 10) throw std::invalid_argument("parse_csv: malformed row");
    SweepRow r;
    r.param = v[0];
    r.oracle = Complex(v[1], v[2]);
    r.approx = Complex(v[4], v[5]);
    r.abs_err = v[6];
    r.bound_value = v[7];
    r.bound_ok = v[8] != 0.0;
    r.leading_exponent = v[9];
    rows.push_back(r);
  }
  return rows;
}

inline std::string to_json_report(const std::vector<SweepRow>& rows,
                                  const SweepSummary& summary) {
  nlohmann::json j;
  j["mode"] = summary.mode;
  j["summary"] = {{"rows", summary.rows},
                  {"bound_violations", summary.bound_violations},
                  {"fitted_slope", summary.fitted_slope},
                  {"fit_intercept", summary.fit_intercept},
                  {"fit_max_residual", summary.fit_max_residual}};
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    arr.push_back({{"param", r.param},
                   {"oracle_re", r.oracle.real()},
                   {"oracle_im", r.oracle.imag()},
                   {"oracle_abs", std::abs(r.oracle)},
                   {"approx_re", r.approx.real()},
                   {"approx_im", r.approx.imag()},
                   {"abs_err", r.abs_err},
                   {"bound", r.bound_value},
                   {"bound_ok", r.bound_ok},
                   {"exponent", r.leading_exponent}});
  }
  j["rows"] = arr;
  return j.dump(2) + "\n";
}

inline std::string to_plotscript(const std::string& csv_path,
                                 const SweepSummary& summary) {
  std::string s;
  s += "# gnuplot script generated by phasekit (mode: " + summary.mode + ")\n";
  s += "set logscale xy\n";
  s += "set datafile separator ','\n";
  s += "set key left bottom\n";
  s += "set xlabel 'omega / t'\n";
  s += "set ylabel 'magnitude'\n";
  s += "plot '" + csv_path + "' skip 1 using 1:4 with linespoints title 'oracle', \\\n";
  s += "     '" + csv_path + "' skip 1 using 1:7 with linespoints title 'error', \\\n";
  s += "     '" + csv_path + "' skip 1 using 1:8 with lines title 'bound'\n";
  return s;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
}

}  // namespace phasekit

#endif  // PHASEKIT_REPORT_HPP
