// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// usage: acceptance <scenario dir>

#include "statgeo/fixtures.hpp"
#include "statgeo/lightlike.hpp"
#include "statgeo/manifold.hpp"
#include "statgeo/sampling.hpp"
#include "statgeo/scenario.hpp"
#include "statgeo/statistical_models.hpp"
#include "statgeo/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

using namespace statgeo;

namespace {

// pinned tolerances
constexpr double kHessianC = 4.0;
constexpr double kHessianDev = 1e-6;
constexpr double kHessianSeconds = 5.0;
constexpr double kSectionalC = -1.0;
constexpr double kSectionalDev = 1e-6;
constexpr double kDualMetric = 1e-8;
constexpr double kInvolution = 1e-8;
constexpr double kAlphaCodazzi = 1e-7;
constexpr double kAlphaDual = 1e-7;
constexpr double kFisher = 1e-8;
constexpr double kSuiteSeconds = 60.0;
constexpr double kGcr = 1e-5;
constexpr double kDualAutoparallel = 1e-8;
constexpr double kRicci = 2e-5;
constexpr double kRadicalBracket = 1e-6;

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t) {
  return std::chrono::duration<double>(clock_type::now() - t).count();
}

double extra(const CheckResult& r, const std::string& name) {
  for (const auto& e : r.extras)
    if (e.first == name) return e.second;
  return std::nan("");
}

double sub(const CheckResult& r, const std::string& name) {
  for (const auto& s : r.sub_residuals)
    if (s.first == name) return s.second;
  return std::nan("");
}

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
  if (!ok) ++failures;
  std::printf("%s criterion %d: %s | %s\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

PipelineOptions with_samples(int samples, int sub_samples = 0) {
  PipelineOptions o;
  o.numerics.samples = samples;
  o.numerics.sub_samples = sub_samples;
  return o;
}

void hessian_curvature() {
  const auto t = clock_type::now();
  Pipeline p(upper_half_space_fixture(2), std::nullopt, with_samples(200));
  const CheckResult r = run_check("hessian_constant_fit", p, kHessianDev, {{"expected_c", kHessianC}});
  const double s = seconds_since(t);
  const double c = extra(r, "c"), dev = extra(r, "deviation");
  report(1, std::abs(c - kHessianC) <= kHessianDev && dev <= kHessianDev && s < kHessianSeconds,
         "Hessian curvature of the flat Hessian upper half-space is 4",
         fmt("c=%.12f deviation=%.2e (tol 1e-6), 200 points, %.2fs (limit 5s)", c, dev, s));
}

void sectional_curvature() {
  const ChartedManifold m = upper_half_space_manifold(2);
  Pipeline p(levi_civita_structure(m), std::nullopt, with_samples(200));
  const CheckResult r = run_check("statistical_curvature", p, kSectionalDev, {{"expected_c", kSectionalC}});
  const double c = extra(r, "c"), dev = extra(r, "deviation");
  report(2, std::abs(c - kSectionalC) <= kSectionalDev && dev <= kSectionalDev && r.passed,
         "sectional curvature of the hyperbolic metric is -1",
         fmt("c=%.12f deviation=%.2e (tol 1e-6), all curvature identities %.2e", c, dev, r.max_residual));
}

void random_structures() {
  double worst_metric = 0, worst_inv = 0;
  int count = 0;
  for (int i = 0; i < 50; ++i) {
    const int dim = 2 + i % 3, index = (i / 3) % 2;
    const auto seed = static_cast<unsigned long long>(1000 + i);
    const ChartedManifold m = random_metric_manifold(dim, index, seed);
    Pipeline p(connection_from_K(m, random_symmetric_cubic(dim, seed, 1, 0.5)), std::nullopt, with_samples(8));
    worst_metric = std::max(worst_metric, run_check("thm_3_1_dual_metric", p, kDualMetric).max_residual);
    worst_inv = std::max(worst_inv, run_check("dual_involution", p, kInvolution).max_residual);
    ++count;
  }
  report(3, count == 50 && worst_metric <= kDualMetric && worst_inv <= kInvolution,
         "dual metric identities and dual involution on 50 random structures (dims 2-4, index 0 and 1)",
         fmt("max dual metric residual %.2e (tol 1e-8), max involution residual %.2e (tol 1e-8)", worst_metric,
             worst_inv));
}

void alpha_suite() {
  const ParametricDensityFamily f = normal_family_fixture();
  double codazzi = 0, dual = 0;
  for (double alpha : {-1.0, 0.0, 1.0}) {
    PipelineOptions o = with_samples(10);
    o.alpha_partner = alpha_structure(f, -alpha).nabla;
    Pipeline p(alpha_structure(f, alpha), std::nullopt, o);
    codazzi = std::max(codazzi, run_check("codazzi", p, kAlphaCodazzi).max_residual);
    dual = std::max(dual, sub(run_check("alpha_dual_pair", p, kAlphaDual), "dual_is_partner"));
  }
  // E[s s^T] for N(mu, sigma^2) with z = (x - mu)/sigma: s_mu = z/sigma, s_sigma = (z^2 - 1)/sigma,
  // E z^2 = 1, E (z^2 - 1)^2 = 2, E z(z^2 - 1) = 0
  const ChartedManifold fm = fisher_manifold(f);
  double fisher = 0;
  for (const Vec& th : sample_lattice(fm.domain, 10, 1)) {
    const double s2 = th(1) * th(1);
    Mat closed = Mat::Zero(2, 2);
    closed(0, 0) = 1.0 / s2;
    closed(1, 1) = 2.0 / s2;
    fisher = std::max(fisher, (fm.metric(th) - closed).cwiseAbs().maxCoeff());
  }
  report(4, codazzi <= kAlphaCodazzi && dual <= kAlphaDual && fisher <= kFisher,
         "alpha-connections of the normal family at 10 points",
         fmt("Codazzi %.2e (tol 1e-7), dual vs (-alpha) %.2e (tol 1e-7), Fisher vs diag(1/s^2, 2/s^2) %.2e (tol 1e-8)",
             codazzi, dual, fisher));
}

struct Fixture {
  const char* name;
  Immersion (*make)(const ChartedManifold&);
  int dim, index;
};

const Fixture kFixtures[] = {
    {"minkowski_lightlike_plane", minkowski_lightlike_plane, 4, 1},
    {"light_cone", light_cone, 3, 1},
    {"r2_lightlike_plane_6d", r2_lightlike_plane_6d, 6, 2},
    {"r2_lightlike_plane_7d", r2_lightlike_plane_7d, 7, 2},
    {"null_hyperplane_twisted_screen", null_hyperplane_twisted_screen, 4, 1},
};

StatisticalStructure ambient_of(const Fixture& f, bool constant_k) {
  const ChartedManifold m = flat_space(f.dim, f.index);
  return constant_k ? constant_K_structure(m, default_K_vector(f.dim)) : levi_civita_structure(m);
}

void identity_suite() {
  const auto t = clock_type::now();
  const char* checks[] = {"frame_identities", "gauss_weingarten_reconstruction", "lemma_3_2", "lemma_3_3",
                          "lemma_3_5",        "lemma_3_11_parallel_hs",          "statistical_curvature",
                          "thm_3_9_gauss_codazzi_ricci"};
  int runs = 0, passed = 0;
  std::string bad;
  for (const Fixture& f : kFixtures) {
    for (bool k : {false, true}) {
      Pipeline p(ambient_of(f, k), f.make(flat_space(f.dim, f.index)), with_samples(20));
      for (const char* id : checks) {
        const CheckResult r = run_check(id, p);
        ++runs;
        if (r.outcome == Outcome::Passed) {
          ++passed;
        } else {
          bad += std::string(" ") + f.name + (k ? "/constant-K/" : "/trivial/") + id;
        }
      }
    }
  }
  const double s = seconds_since(t);
  report(5, passed == runs && s < kSuiteSeconds,
         "unconditional identity suite on 5 fixtures x {trivial, constant-K}",
         std::to_string(passed) + "/" + std::to_string(runs) + " checks pass at default tolerances, " +
             fmt("%.2fs (limit 60s)", s) + (bad.empty() ? "" : "; failing:" + bad));
}

void light_cone_gcr() {
  const ChartedManifold m = flat_space(3, 1);
  Pipeline p(levi_civita_structure(m), light_cone(m), with_samples(20, 50));
  const CheckResult r = run_check("thm_3_9_gauss_codazzi_ricci", p, kGcr);
  std::string parts;
  double worst = 0;
  for (const char* s : {"gauss_tangential", "gauss_transversal", "codazzi_ltr_tangential", "ricci_ltr",
                        "codazzi_scr_tangential", "ricci_scr"}) {
    const double v = std::max(sub(r, s), sub(r, std::string(s) + "_dual"));
    worst = std::max(worst, v);
    parts += fmt(" %.1e", v);
  }
  report(6, static_cast<int>(p.sub_points().size()) == 50 && worst <= kGcr && r.outcome == Outcome::Passed,
         "Gauss, Codazzi and Ricci equations on the light cone in flat Minkowski 3-space, 50 points",
         "six residuals (max of both connections):" + parts + " (tol 1e-5)" +
             (p.plan().layout.perp_count() == 0 ? "; screen-transversal bundle is empty for a null hypersurface" : ""));
}

void ricci_symmetry() {
  const Fixture& plane = kFixtures[0];
  Pipeline p(ambient_of(plane, true), plane.make(flat_space(4, 1)), with_samples(20));
  const CheckResult r = run_check("thm_3_13_ricci_symmetry", p, kRicci);
  double hyp = std::nan("");
  for (const auto& h : r.hypotheses)
    if (h.name == "dual_autoparallel") hyp = h.residual;
  const Fixture& cone = kFixtures[1];
  Pipeline q(ambient_of(cone, true), cone.make(flat_space(3, 1)), with_samples(20));
  const CheckResult n = run_check("thm_3_13_ricci_symmetry", q, kRicci);
  report(7, hyp <= kDualAutoparallel && r.max_residual <= kRicci && r.outcome == Outcome::Passed &&
                n.outcome == Outcome::NotApplicable,
         "Theorem 3.13 on the null plane with constant-K ambient; light cone not applicable",
         fmt("hypothesis %.2e (tol 1e-8), Ricci asymmetry %.2e (tol 2e-5), light cone outcome ", hyp,
             r.max_residual) +
             outcome_name(n.outcome));
}

void radical_integrable() {
  const Fixture& f = kFixtures[2];
  Pipeline p(ambient_of(f, true), f.make(flat_space(f.dim, f.index)), with_samples(20));
  const CheckResult r = run_check("thm_3_8_radical_integrable", p, kRadicalBracket);
  const double b = sub(r, "radical_bracket");
  report(8, p.lightlike_rank() == 2 && b <= kRadicalBracket && r.outcome == Outcome::Passed,
         "Theorem 3.8 on the rank-2 plane with constant-K ambient",
         fmt("r=%.0f, radical bracket residual %.2e (tol 1e-6)", p.lightlike_rank(), b));
}

void determinism(const std::string& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::string bad;
  for (const auto& path : files) {
    const Scenario s = load_scenario(path.string());
    if (report_json(s, run_scenario(s), false) != report_json(s, run_scenario(s), false))
      bad += " " + path.filename().string();
  }
  report(9, !files.empty() && bad.empty(), "bundled scenarios rerun with the same seed give identical reports",
         std::to_string(files.size()) + " scenarios compared byte for byte outside the timing object" +
             (bad.empty() ? "" : "; differing:" + bad));
}

void guarded(int id, const std::function<void()>& f) {
  try {
    f();
  } catch (const std::exception& e) {
    report(id, false, "criterion raised", e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : "scenarios";
  guarded(1, hessian_curvature);
  guarded(2, sectional_curvature);
  guarded(3, random_structures);
  guarded(4, alpha_suite);
  guarded(5, identity_suite);
  guarded(6, light_cone_gcr);
  guarded(7, ricci_symmetry);
  guarded(8, radical_integrable);
  guarded(9, [&] { determinism(dir); });
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
