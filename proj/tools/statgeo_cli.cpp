#include "statgeo/errors.hpp"
#include "statgeo/scenario.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

using namespace statgeo;

namespace {

int cmd_run(const std::string& path, const Overrides& o, const std::string& report, bool timing, bool quiet) {
  Scenario s = load_scenario(path);
  apply_overrides(s, o);
  const ScenarioRun run = run_scenario(s);
  const std::string text = report_json(s, run, timing);
  if (report == "-") {
    std::cout << text;
  } else {
    if (!report.empty()) {
      std::ofstream out(report, std::ios::binary);
      if (!out) throw ScenarioParseError("cannot write report '" + report + "'");
      out << text;
    }
    if (!quiet) {
      std::cout << "scenario " << s.name << "\n";
      for (const CheckRun& c : run.checks) {
        const CheckResult& r = c.result;
        char line[256];
        std::snprintf(line, sizeof line, "%-15s %-34s max_residual=%.3e tol=%.1e", outcome_name(r.outcome),
                      r.check_id.c_str(), r.max_residual, r.tolerance);
        std::cout << line;
        for (const auto& [k, v] : r.extras)
          if (k == "c") std::cout << " c=" << v;
        if (!r.note.empty()) std::cout << "  (" << r.note << ")";
        std::cout << "\n";
      }
      std::cout << "summary: " << run.passed << " passed, " << run.failed << " failed, " << run.not_applicable
                << " not applicable\n";
    }
  }
  return run.failed > 0 ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for lightlike submanifolds of statistical manifolds"};
  app.set_version_flag("--version", STATGEO_VERSION);
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run a scenario file and emit a JSON report");
  std::string path, report;
  bool no_timing = false, quiet = false;
  double tol = 0, fd_step = 0;
  unsigned long long seed = 0;
  int samples = 0, threads = 0;
  run->add_option("scenario", path, "scenario JSON file")->required();
  auto* o_tol = run->add_option("--tol", tol, "tolerance for every check");
  auto* o_fd = run->add_option("--fd-step", fd_step, "finite difference step");
  auto* o_seed = run->add_option("--seed", seed, "lattice seed");
  auto* o_samples = run->add_option("--samples", samples, "lattice size (ambient and submanifold)");
  auto* o_threads = run->add_option("--threads", threads, "worker threads");
  run->add_option("--report", report, "write the JSON report here ('-' for stdout)");
  run->add_flag("--no-timing", no_timing, "omit the timing object from the report");
  run->add_flag("-q,--quiet", quiet, "no text summary");

  auto* lc = app.add_subcommand("list-checks", "list check ids");
  auto* lb = app.add_subcommand("list-builtins", "list ambients, connections and submanifolds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*lc) {
      for (const CheckInfo& c : check_registry()) {
        std::printf("%-34s %-28s %s%s\n", c.id.c_str(), c.label.c_str(), c.description.c_str(),
                    c.needs_submanifold ? " [submanifold]" : "");
      }
      return 0;
    }
    if (*lb) {
      for (const BuiltinInfo& b : builtin_registry())
        std::printf("%-12s %-32s %s\n", b.kind.c_str(), b.name.c_str(), b.description.c_str());
      return 0;
    }
    Overrides o;
    if (*o_tol) o.tolerance = tol;
    if (*o_fd) o.fd_step = fd_step;
    if (*o_seed) o.seed = seed;
    if (*o_samples) o.samples = samples;
    if (*o_threads) o.threads = threads;
    return cmd_run(path, o, report, !no_timing, quiet);
  } catch (const ScenarioParseError& e) {
    std::cerr << "scenario error: " << e.what() << "\n";
    return 2;
  } catch (const FixtureConstructionError& e) {
    std::cerr << "fixture error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
