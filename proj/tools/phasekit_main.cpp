// phasekit command line: sweeps of asymptotic expansions of oscillatory
// integrals against the brute-force oracle, with bound verification reports.
//
// Exit codes: 0 success with zero bound violations, 1 config error,
// 2 bound violations (or fixture mismatch in verify mode).

#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "phasekit/phasekit.hpp"

namespace {

using namespace phasekit;

struct CliOptions {
  std::string config_path;
  std::string out;
  std::string format;
  int jobs = 1;
  double tolerance = 0.0;
};

int run_mode(RunConfig cfg, const CliOptions& opt) {
  if (!opt.out.empty()) cfg.out = opt.out;
  if (!opt.format.empty()) cfg.format = opt.format;
  if (opt.tolerance > 0.0) cfg.tolerances.rel_tol = opt.tolerance;

  SweepResult res = run_sweep(cfg, opt.jobs);
  std::string path = cfg.out.empty() ? "phasekit_report." + (cfg.format == "plotscript"
                                                                 ? std::string("gp")
                                                                 : cfg.format)
                                     : cfg.out;
  emit_report(res, cfg.format, path);
  std::cout << "mode " << cfg.mode << ": " << res.summary.rows << " rows, "
            << res.summary.bound_violations << " bound violations, fitted slope "
            << res.summary.fitted_slope << "\n"
            << "report written to " << path << "\n";
  return res.summary.bound_violations == 0 ? 0 : 2;
}

int run_verify(const RunConfig& cfg, const CliOptions& opt) {
  std::string fixture = cfg.fixture;
  if (const char* base = std::getenv("PHASEKIT_SEED_FIXTURES");
      base != nullptr && !fixture.empty() && fixture.front() != '/')
    fixture = std::string(base) + "/" + fixture;
  std::ifstream in(fixture, std::ios::binary);
  if (!in) {
    std::cerr << "verify: cannot open fixture " << fixture << "\n";
    return 1;
  }
  std::string expected((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
  SweepResult res = run_sweep(*cfg.verify_run, opt.jobs);
  std::string actual = to_csv(res.rows);
  if (actual == expected) {
    std::cout << "verify: fixture reproduced byte-for-byte (" << res.summary.rows
              << " rows)\n";
    return 0;
  }
  std::cerr << "verify: regenerated report differs from fixture " << fixture << "\n";
  if (!cfg.out.empty()) write_file(cfg.out, actual);
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"phasekit: stationary-phase expansions of oscillatory integrals "
               "with explicit remainder bounds, cross-checked against a "
               "quadrature oracle"};
  app.require_subcommand(1);

  CliOptions opt;
  const std::vector<std::string> verbs = {"expand", "cutpoint", "quadratic",
                                          "curve",  "schrodinger", "energy",
                                          "verify"};
  for (const auto& verb : verbs) {
    CLI::App* sub = app.add_subcommand(verb);
    sub->add_option("--config", opt.config_path, "JSON run configuration")->required();
    sub->add_option("--out", opt.out, "output path (overrides config)");
    sub->add_option("--format", opt.format, "csv|json|plotscript (overrides config)");
    sub->add_option("--jobs", opt.jobs, "parallel row evaluation threads");
    sub->add_option("--tolerance", opt.tolerance, "oracle relative tolerance override");
  }

  CLI11_PARSE(app, argc, argv);
  std::string verb = app.get_subcommands().front()->get_name();

  try {
    phasekit::RunConfig cfg = phasekit::load_config(opt.config_path);
    if (cfg.mode != verb) {
      std::cerr << "config error: mode '" << cfg.mode << "' does not match subcommand '"
                << verb << "'\n";
      return 1;
    }
    return verb == "verify" ? run_verify(cfg, opt) : run_mode(std::move(cfg), opt);
  } catch (const phasekit::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
