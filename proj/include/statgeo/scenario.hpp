#pragma once

// Declarative scenarios: ambient + optional submanifold + checks + numerics,
// read from JSON, and the JSON report produced by running them.

#include "statgeo/verifier.hpp"

#include <optional>
#include <string>
#include <vector>

namespace statgeo {

struct CheckRequest {
  std::string id;
  std::optional<double> tolerance;
  CheckParams params;
};

struct Scenario {
  std::string name;
  std::string source;  // canonical JSON text of the scenario as read
  std::vector<CheckRequest> checks;
  Numerics numerics;
  int threads = 0;
};

/// Throws ScenarioParseError on malformed input, unknown builtin names,
/// unknown check ids or parameters.
Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario(const std::string& path);

struct Overrides {
  std::optional<double> tolerance;  // applied to every check
  std::optional<double> fd_step;
  std::optional<unsigned long long> seed;
  std::optional<int> samples;
  std::optional<int> threads;
};

void apply_overrides(Scenario& s, const Overrides& o);

/// Throws FixtureConstructionError when the ambient or the submanifold cannot
/// be built (dimension mismatch, degenerate frames, rank change, ...).
Pipeline build_pipeline(const Scenario& s);

struct CheckRun {
  CheckResult result;
  double seconds = 0.0;
};

struct ScenarioRun {
  std::vector<CheckRun> checks;
  double seconds = 0.0;
  int passed = 0;
  int failed = 0;
  int not_applicable = 0;
};

ScenarioRun run_scenario(const Scenario& s);

/// Report with stable key order. Wall-clock fields live in the "timing"
/// object only, so reports of identical runs differ nowhere else.
std::string report_json(const Scenario& s, const ScenarioRun& run, bool with_timing = true);

struct BuiltinInfo {
  std::string kind;  // "ambient", "connection" or "submanifold"
  std::string name;
  std::string description;
};

/// Sorted by kind, then name.
std::vector<BuiltinInfo> builtin_registry();

}  // namespace statgeo
