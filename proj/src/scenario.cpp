#include "statgeo/scenario.hpp"

#include "statgeo/errors.hpp"
#include "statgeo/fixtures.hpp"
#include "statgeo/lightlike.hpp"
#include "statgeo/parallel.hpp"
#include "statgeo/statistical_models.hpp"

#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace statgeo {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void parse_fail(const std::string& msg) { throw ScenarioParseError(msg); }

void allow_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
  if (!j.is_object()) parse_fail(where + " must be an object");
  std::set<std::string> ok(keys.begin(), keys.end());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!ok.count(it.key())) parse_fail(where + ": unknown key '" + it.key() + "'");
}

double num(const json& j, const char* key, double fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) parse_fail(where + "." + key + " must be a number");
  return j[key].get<double>();
}

int integer(const json& j, const char* key, int fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer()) parse_fail(where + "." + key + " must be an integer");
  return j[key].get<int>();
}

Vec vec(const json& j, const std::string& where) {
  if (!j.is_array()) parse_fail(where + " must be an array of numbers");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) parse_fail(where + " must be an array of numbers");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

struct AmbientBuiltin {
  std::string description;
  std::vector<const char*> keys;
  std::function<ChartedManifold(const json&)> chart;  // empty for model families
};

const std::map<std::string, AmbientBuiltin>& ambients() {
  static const std::map<std::string, AmbientBuiltin> m = {
      {"flat",
       {"pseudo-Euclidean space diag(-1 x index, +1 ...) on a cube (dim, index, half_width)",
        {"dim", "index", "half_width"},
        [](const json& j) {
          return flat_space(integer(j, "dim", 4, "ambient"), integer(j, "index", 1, "ambient"),
                            num(j, "half_width", 2.0, "ambient"));
        }}},
      {"normal_family",
       {"Fisher metric of normal densities N(mu, sigma^2), mu in [-1,1], sigma in [0.5,2]",
        {},
        nullptr}},
      {"pseudo_hyperbolic",
       {"eta / (x^axis)^2, constant curvature -1 for Levi-Civita (dim, index, axis)",
        {"dim", "index", "axis"},
        [](const json& j) {
          const int dim = integer(j, "dim", 4, "ambient");
          return pseudo_hyperbolic_space(dim, integer(j, "index", 1, "ambient"),
                                         integer(j, "axis", dim - 2, "ambient"));
        }}},
      {"random",
       {"seeded metric L(x)^T eta L(x) with L affine, box [-0.5,0.5]^dim (dim, index, seed)",
        {"dim", "index", "seed"},
        [](const json& j) {
          return random_metric_manifold(integer(j, "dim", 3, "ambient"), integer(j, "index", 0, "ambient"),
                                        static_cast<unsigned long long>(integer(j, "seed", 1, "ambient")));
        }}},
      {"upper_half_space",
       {"hyperbolic metric on the upper half-space of dimension n+1, native connection flat Hessian (n)",
        {"n"},
        [](const json& j) { return upper_half_space_manifold(integer(j, "n", 2, "ambient")); }}},
  };
  return m;
}

const std::map<std::string, std::string>& connections() {
  static const std::map<std::string, std::string> m = {
      {"alpha_family", "Amari alpha-connection of a model family (alpha); normal_family only"},
      {"explicit", "constant Christoffel symbols gamma[k][i][j]; dual from the metric"},
      {"from_K",
       "Levi-Civita + K from a totally symmetric cubic form: cubic = constant_vector (V) or random "
       "(seed, degree, scale)"},
      {"levi_civita", "Levi-Civita connection of the metric (K = 0)"},
      {"native", "builtin connection of the ambient (flat Hessian on upper_half_space)"},
  };
  return m;
}

struct SubBuiltin {
  std::string description;
  Immersion (*make)(const ChartedManifold&);
};

const std::map<std::string, SubBuiltin>& submanifolds() {
  static const std::map<std::string, SubBuiltin> m = {
      {"euclidean_plane", {"spacelike plane in a 3-dim ambient (r = 0)", euclidean_plane}},
      {"light_cone", {"future light cone in a 3-dim index-1 ambient (r = 1)", light_cone}},
      {"minkowski_lightlike_plane",
       {"null plane (u, v) -> (u, u, v, 0) in a 4-dim index-1 ambient (r = 1)", minkowski_lightlike_plane}},
      {"null_hyperplane_twisted_screen",
       {"null hyperplane in a 4-dim index-1 ambient with a non-integrable screen (r = 1)",
        null_hyperplane_twisted_screen}},
      {"r2_lightlike_plane_6d",
       {"(u, v, w) -> (u, v, u, v, w, 0) in a 6-dim index-2 ambient (r = 2)", r2_lightlike_plane_6d}},
      {"r2_lightlike_plane_7d",
       {"(u, v, w, s) -> (u, v, u, v, w, s, 0) in a 7-dim index-2 ambient (r = 2)",
        r2_lightlike_plane_7d}},
  };
  return m;
}

struct Built {
  StatisticalStructure structure;
  std::optional<AffineConnection> alpha_partner;
};

CubicFormField cubic_from(const json& c, const ChartedManifold& m) {
  const std::string kind = c.value("cubic", std::string("constant_vector"));
  if (kind == "constant_vector") {
    allow_keys(c, "connection", {"kind", "cubic", "V"});
    Vec v = c.contains("V") ? vec(c["V"], "connection.V") : default_K_vector(m.dim);
    if (v.size() != m.dim) throw FixtureConstructionError("connection.V has the wrong dimension");
    return constant_vector_cubic(m.metric_at, v);
  }
  if (kind == "random") {
    allow_keys(c, "connection", {"kind", "cubic", "seed", "degree", "scale"});
    return random_symmetric_cubic(m.dim, static_cast<unsigned long long>(integer(c, "seed", 1, "connection")),
                                  integer(c, "degree", 1, "connection"), num(c, "scale", 1.0, "connection"));
  }
  parse_fail("connection.cubic must be constant_vector or random");
}

void validate_connection(const json& a) {
  const json c = a.value("connection", json{{"kind", "levi_civita"}});
  if (!c.is_object() || !c.contains("kind") || !c["kind"].is_string())
    parse_fail("ambient.connection needs a string 'kind'");
  const std::string kind = c["kind"];
  if (!connections().count(kind)) parse_fail("unknown connection kind '" + kind + "'");
  const std::string amb = a["name"];
  if (kind == "alpha_family" && amb != "normal_family")
    parse_fail("alpha_family connections need the normal_family ambient");
  if (amb == "normal_family" && kind != "alpha_family")
    parse_fail("the normal_family ambient takes an alpha_family connection");
  if (kind == "native" && amb != "upper_half_space") parse_fail("no native connection on '" + amb + "'");
  if (kind == "levi_civita" || kind == "native") allow_keys(c, "connection", {"kind"});
  if (kind == "alpha_family") allow_keys(c, "connection", {"kind", "alpha"});
  if (kind == "explicit") {
    allow_keys(c, "connection", {"kind", "gamma"});
    if (!c.contains("gamma") || !c["gamma"].is_array()) parse_fail("explicit connection needs gamma");
  }
  if (kind == "from_K" && c.contains("cubic") &&
      (!c["cubic"].is_string() || (c["cubic"] != "constant_vector" && c["cubic"] != "random")))
    parse_fail("connection.cubic must be constant_vector or random");
}

Built build_ambient(const json& a, const FdOptions& fd) {
  const std::string name = a["name"];
  const json c = a.value("connection", json{{"kind", "levi_civita"}});
  const std::string kind = c["kind"];
  Built out;
  if (name == "normal_family") {
    const double alpha = num(c, "alpha", 0.0, "connection");
    ParametricDensityFamily f = normal_family_fixture();
    out.structure = alpha_structure(f, alpha, fd);
    out.alpha_partner = alpha_structure(f, -alpha, fd).nabla;
    return out;
  }
  json params = a;
  params.erase("name");
  params.erase("connection");
  const ChartedManifold m = ambients().at(name).chart(params);
  if (kind == "levi_civita") {
    out.structure = levi_civita_structure(m, fd);
  } else if (kind == "native") {
    out.structure = upper_half_space_fixture(integer(params, "n", 2, "ambient"), fd);
  } else if (kind == "from_K") {
    out.structure = connection_from_K(m, cubic_from(c, m), fd);
  } else if (kind == "explicit") {
    const json& g = c["gamma"];
    const int n = m.dim;
    Tensor3 t(n);
    if (static_cast<int>(g.size()) != n) throw FixtureConstructionError("gamma has the wrong dimension");
    for (int k = 0; k < n; ++k) {
      if (!g[k].is_array() || static_cast<int>(g[k].size()) != n)
        throw FixtureConstructionError("gamma has the wrong dimension");
      for (int i = 0; i < n; ++i) {
        Vec row = vec(g[k][i], "connection.gamma");
        if (row.size() != n) throw FixtureConstructionError("gamma has the wrong dimension");
        for (int j = 0; j < n; ++j) t(k, i, j) = row(j);
      }
    }
    AffineConnection conn;
    conn.gamma_at = [t](const Vec&) { return t; };
    out.structure = make_statistical_structure(m, conn, fd);
  }
  return out;
}

json result_json(const CheckResult& r) {
  json j;
  const CheckInfo* info = find_check(r.check_id);
  j["check_id"] = r.check_id;
  j["label"] = info ? info->label : "";
  j["outcome"] = outcome_name(r.outcome);
  j["passed"] = r.passed;
  j["max_residual"] = r.max_residual;
  j["tolerance"] = r.tolerance;
  json subs = json::object();
  for (const auto& s : r.sub_residuals) subs[s.first] = s.second;
  j["sub_residuals"] = subs;
  json hyps = json::array();
  for (const auto& h : r.hypotheses)
    hyps.push_back({{"name", h.name}, {"holds", h.holds}, {"residual", h.residual}, {"threshold", h.threshold}});
  j["hypotheses"] = hyps;
  json extras = json::object();
  for (const auto& e : r.extras) extras[e.first] = e.second;
  j["extras"] = extras;
  json wit = json::array();
  for (const auto& w : r.witnesses) {
    json pt = json::array();
    for (Eigen::Index i = 0; i < w.point.size(); ++i) pt.push_back(w.point(i));
    wit.push_back({{"point", pt}, {"where", w.where}, {"residual", w.residual}});
  }
  j["witnesses"] = wit;
  j["note"] = r.note;
  return j;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    parse_fail(std::string("scenario is not valid JSON: ") + e.what());
  }
  allow_keys(j, "scenario", {"name", "description", "ambient", "submanifold", "checks", "numerics", "threads"});
  Scenario s;
  s.name = j.value("name", std::string("scenario"));

  if (!j.contains("ambient")) parse_fail("scenario needs an ambient");
  const json& a = j["ambient"];
  if (!a.is_object() || !a.contains("name") || !a["name"].is_string()) parse_fail("ambient needs a string 'name'");
  const std::string amb = a["name"];
  auto it = ambients().find(amb);
  if (it == ambients().end()) parse_fail("unknown ambient builtin '" + amb + "'");
  {
    std::vector<const char*> keys = it->second.keys;
    json rest = a;
    rest.erase("name");
    rest.erase("connection");
    for (auto k = rest.begin(); k != rest.end(); ++k)
      if (std::none_of(keys.begin(), keys.end(), [&](const char* x) { return k.key() == x; }))
        parse_fail("ambient: unknown key '" + k.key() + "'");
  }
  validate_connection(a);

  const bool has_sub = j.contains("submanifold") && !j["submanifold"].is_null();
  if (has_sub) {
    const json& sm = j["submanifold"];
    allow_keys(sm, "submanifold", {"name", "samples", "box"});
    if (!sm.contains("name") || !sm["name"].is_string()) parse_fail("submanifold needs a string 'name'");
    if (!submanifolds().count(sm["name"])) parse_fail("unknown submanifold builtin '" + sm["name"].get<std::string>() + "'");
    s.numerics.sub_samples = integer(sm, "samples", 0, "submanifold");
    if (sm.contains("box")) {
      allow_keys(sm["box"], "submanifold.box", {"lower", "upper"});
      if (!sm["box"].contains("lower") || !sm["box"].contains("upper")) parse_fail("submanifold.box needs lower and upper");
      vec(sm["box"]["lower"], "submanifold.box.lower");
      vec(sm["box"]["upper"], "submanifold.box.upper");
    }
  }

  if (j.contains("numerics")) {
    const json& n = j["numerics"];
    allow_keys(n, "numerics", {"fd_step", "rank_tol", "seed", "samples"});
    s.numerics.fd_step = num(n, "fd_step", s.numerics.fd_step, "numerics");
    s.numerics.rank_tol = num(n, "rank_tol", s.numerics.rank_tol, "numerics");
    s.numerics.samples = integer(n, "samples", s.numerics.samples, "numerics");
    if (n.contains("seed")) {
      if (!n["seed"].is_number_unsigned()) parse_fail("numerics.seed must be a non-negative integer");
      s.numerics.seed = n["seed"].get<unsigned long long>();
    }
  }
  if (!(s.numerics.fd_step > 0.0)) parse_fail("numerics.fd_step must be positive");
  if (!(s.numerics.rank_tol > 0.0)) parse_fail("numerics.rank_tol must be positive");
  if (s.numerics.samples < 1 || s.numerics.sub_samples < 0) parse_fail("samples must be positive");
  s.threads = integer(j, "threads", 0, "scenario");

  if (!j.contains("checks") || !j["checks"].is_array() || j["checks"].empty())
    parse_fail("scenario needs a non-empty 'checks' array");
  for (const json& c : j["checks"]) {
    CheckRequest req;
    if (c.is_string()) {
      req.id = c;
    } else if (c.is_object()) {
      allow_keys(c, "check", {"id", "tolerance", "params"});
      if (!c.contains("id") || !c["id"].is_string()) parse_fail("check entries need a string 'id'");
      req.id = c["id"];
      if (c.contains("tolerance")) {
        if (!c["tolerance"].is_number() || !(c["tolerance"].get<double>() > 0.0))
          parse_fail("check '" + req.id + "': tolerance must be a positive number");
        req.tolerance = c["tolerance"].get<double>();
      }
      if (c.contains("params")) {
        if (!c["params"].is_object()) parse_fail("check '" + req.id + "': params must be an object");
        for (auto p = c["params"].begin(); p != c["params"].end(); ++p) {
          if (!p.value().is_number()) parse_fail("check '" + req.id + "': parameter values must be numbers");
          req.params[p.key()] = p.value().get<double>();
        }
      }
    } else {
      parse_fail("check entries must be ids or objects");
    }
    const CheckInfo* info = find_check(req.id);
    if (!info) parse_fail("unknown check id '" + req.id + "'");
    if (info->needs_submanifold && !has_sub) parse_fail("check '" + req.id + "' needs a submanifold");
    for (const auto& kv : req.params)
      if (std::find(info->params.begin(), info->params.end(), kv.first) == info->params.end())
        parse_fail("check '" + req.id + "' has no parameter '" + kv.first + "'");
    s.checks.push_back(std::move(req));
  }
  s.source = j.dump();
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot read scenario file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

void apply_overrides(Scenario& s, const Overrides& o) {
  if (o.tolerance) {
    if (!(*o.tolerance > 0.0)) parse_fail("--tol must be positive");
    for (auto& c : s.checks) c.tolerance = *o.tolerance;
  }
  if (o.fd_step) {
    if (!(*o.fd_step > 0.0)) parse_fail("--fd-step must be positive");
    s.numerics.fd_step = *o.fd_step;
  }
  if (o.seed) s.numerics.seed = *o.seed;
  if (o.samples) {
    if (*o.samples < 1) parse_fail("--samples must be positive");
    s.numerics.samples = *o.samples;
    s.numerics.sub_samples = 0;
  }
  if (o.threads) s.threads = *o.threads;
}

Pipeline build_pipeline(const Scenario& s) {
  const json j = json::parse(s.source);
  PipelineOptions opt;
  opt.numerics = s.numerics;
  opt.threads = s.threads;
  const FdOptions fd{s.numerics.fd_step, FdScheme::Central4};
  try {
    Built amb = build_ambient(j["ambient"], fd);
    opt.alpha_partner = amb.alpha_partner;
    std::optional<Immersion> im;
    if (j.contains("submanifold") && !j["submanifold"].is_null()) {
      const json& sm = j["submanifold"];
      im = submanifolds().at(sm["name"]).make(amb.structure.manifold);
      if (sm.contains("box")) {
        Box b{vec(sm["box"]["lower"], "box"), vec(sm["box"]["upper"], "box")};
        if (b.dim() != im->param_dim || b.upper.size() != b.lower.size() ||
            !(b.lower.array() < b.upper.array()).all())
          throw FixtureConstructionError("submanifold.box does not match the parameter dimension");
        im->box = b;
      }
    }
    return Pipeline(std::move(amb.structure), std::move(im), opt);
  } catch (const ScenarioParseError&) {
    throw;
  } catch (const FixtureConstructionError&) {
    throw;
  } catch (const Error& e) {
    throw FixtureConstructionError(e.what());
  }
}

ScenarioRun run_scenario(const Scenario& s) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  const Pipeline p = build_pipeline(s);
  ScenarioRun run;
  run.checks.resize(s.checks.size());
  try {
    // shared point data first, so frame breakdowns surface as fixture errors
    if (p.has_submanifold()) p.point_data();
    parallel_for(static_cast<int>(s.checks.size()), p.threads(), [&](int i) {
      const CheckRequest& c = s.checks[static_cast<size_t>(i)];
      const auto t = clock::now();
      CheckRun& cr = run.checks[static_cast<size_t>(i)];
      cr.result = run_check(c.id, p, c.tolerance, c.params);
      cr.seconds = std::chrono::duration<double>(clock::now() - t).count();
    });
  } catch (const ScenarioParseError&) {
    throw;
  } catch (const FixtureConstructionError&) {
    throw;
  } catch (const Error& e) {
    throw FixtureConstructionError(e.what());
  }
  for (const CheckRun& cr : run.checks) {
    switch (cr.result.outcome) {
      case Outcome::Passed: ++run.passed; break;
      case Outcome::Failed: ++run.failed; break;
      case Outcome::NotApplicable: ++run.not_applicable; break;
    }
  }
  run.seconds = std::chrono::duration<double>(clock::now() - t0).count();
  return run;
}

std::string report_json(const Scenario& s, const ScenarioRun& run, bool with_timing) {
  json r;
  r["schema_version"] = "1";
  r["tool"] = {{"name", "statgeo"}, {"version", STATGEO_VERSION}};
  r["scenario"] = json::parse(s.source);
  r["numerics"] = {{"fd_step", s.numerics.fd_step},
                   {"rank_tol", s.numerics.rank_tol},
                   {"seed", s.numerics.seed},
                   {"samples", s.numerics.samples}};
  if (r["scenario"].contains("submanifold"))
    r["numerics"]["sub_samples"] = s.numerics.sub_samples > 0 ? s.numerics.sub_samples : s.numerics.samples;
  json checks = json::array();
  for (const CheckRun& c : run.checks) checks.push_back(result_json(c.result));
  r["checks"] = checks;
  r["summary"] = {{"passed", run.passed}, {"failed", run.failed}, {"not_applicable", run.not_applicable}};
  if (with_timing) {
    json per = json::array();
    for (const CheckRun& c : run.checks) per.push_back({{"check_id", c.result.check_id}, {"seconds", c.seconds}});
    r["timing"] = {{"total_seconds", run.seconds}, {"checks", per}};
  }
  return r.dump(2) + "\n";
}

std::vector<BuiltinInfo> builtin_registry() {
  std::vector<BuiltinInfo> out;
  for (const auto& [k, v] : ambients()) out.push_back({"ambient", k, v.description});
  for (const auto& [k, v] : connections()) out.push_back({"connection", k, v});
  for (const auto& [k, v] : submanifolds()) out.push_back({"submanifold", k, v.description});
  std::sort(out.begin(), out.end(), [](const BuiltinInfo& a, const BuiltinInfo& b) {
    return a.kind != b.kind ? a.kind < b.kind : a.name < b.name;
  });
  return out;
}

}  // namespace statgeo
