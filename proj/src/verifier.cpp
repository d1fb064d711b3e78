#include "statgeo/verifier.hpp"

#include "statgeo/errors.hpp"
#include "statgeo/parallel.hpp"
#include "statgeo/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace statgeo {

Pipeline::Pipeline(StatisticalStructure ambient, std::optional<Immersion> submanifold,
                   PipelineOptions options)
    : ambient_(std::move(ambient)),
      submanifold_(std::move(submanifold)),
      options_(std::move(options)) {
  const Numerics& n = options_.numerics;
  if (n.samples < 1 || n.sub_samples < 0) throw ScenarioParseError("samples must be positive");
  if (!(n.fd_step > 0.0)) throw ScenarioParseError("fd_step must be positive");
  ambient_points_ = sample_lattice(ambient_.manifold.domain, n.samples, n.seed);
  ambient_.manifold.validate(ambient_points_, n.rank_tol);
  if (submanifold_) {
    sub_points_ = sample_lattice(submanifold_->box, n.sub_samples > 0 ? n.sub_samples : n.samples, n.seed);
    classify(*submanifold_, sub_points_, n.rank_tol, fd());
    plan_ = make_frame_plan(*submanifold_, submanifold_->box.center(), n.rank_tol, fd());
  }
}

int Pipeline::threads() const {
  return options_.threads > 0 ? options_.threads : thread_budget();
}

const std::vector<PointData>& Pipeline::point_data() const {
  std::call_once(data_once_, [this] {
    if (!submanifold_) throw ScenarioParseError("checks on induced objects need a submanifold");
    const int n = static_cast<int>(sub_points_.size());
    std::vector<PointData> data(static_cast<size_t>(n));
    std::vector<InducedCurvatures> curv(static_cast<size_t>(n));
    PointOptions po;
    po.fd = fd();
    const double delta = options_.corrupt_h_l;
    parallel_for(n, threads(), [&](int i) {
      PointData d = compute_point_data(*submanifold_, plan_, ambient_, sub_points_[i], po);
      const FrameLayout& l = d.frame.layout;
      if (delta != 0.0 && l.r > 0) d.nabla.phi[l.m - 1](l.ltr0(), l.m - 1) += delta;
      curv[i] = induced_curvatures(d);
      data[i] = std::move(d);
    });
    data_ = std::move(data);
    curv_ = std::move(curv);
  });
  return data_;
}

const std::vector<InducedCurvatures>& Pipeline::curvatures() const {
  point_data();
  return curv_;
}

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Passed: return "PASS";
    case Outcome::Failed: return "FAIL";
    case Outcome::NotApplicable: return "NOT-APPLICABLE";
  }
  return "?";
}

void Residuals::add(const std::string& sub, double r, const Vec& point, const std::string& indices) {
  if (!std::isfinite(r)) r = std::numeric_limits<double>::infinity();
  r = std::abs(r);
  auto it = std::find_if(subs_.begin(), subs_.end(), [&](const auto& s) { return s.first == sub; });
  if (it == subs_.end()) {
    subs_.emplace_back(sub, r);
  } else {
    it->second = std::max(it->second, r);
  }
  const size_t seq = seq_++;
  if (worst_.size() == 5 && !(r > worst_.back().residual)) return;
  Witness w{point, indices.empty() ? sub : sub + " " + indices, r};
  // insert after every entry with residual >= r, keeping earlier entries first on ties
  size_t pos = 0;
  while (pos < worst_.size() && worst_[pos].residual >= r) ++pos;
  worst_.insert(worst_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(w));
  order_.insert(order_.begin() + static_cast<std::ptrdiff_t>(pos), seq);
  if (worst_.size() > 5) {
    worst_.pop_back();
    order_.pop_back();
  }
}

void Residuals::touch(const std::string& sub) {
  auto it = std::find_if(subs_.begin(), subs_.end(), [&](const auto& s) { return s.first == sub; });
  if (it == subs_.end()) subs_.emplace_back(sub, 0.0);
}

double Residuals::max() const {
  double m = 0.0;
  for (const auto& s : subs_) m = std::max(m, s.second);
  return m;
}

double Residuals::max(const std::string& sub) const {
  for (const auto& s : subs_)
    if (s.first == sub) return s.second;
  return 0.0;
}

void Residuals::write(CheckResult& out) const {
  for (const auto& s : subs_) out.sub_residuals.push_back(s);
  out.witnesses = worst_;
  out.max_residual = std::max(out.max_residual, max());
}

void finalize(CheckResult& r, bool applicable) {
  r.passed = r.max_residual <= r.tolerance;
  if (!applicable)
    r.outcome = Outcome::NotApplicable;
  else
    r.outcome = r.passed ? Outcome::Passed : Outcome::Failed;
}

const std::vector<CheckInfo>& check_registry() {
  static const std::vector<CheckInfo> reg = [] {
    std::vector<CheckInfo> v = {
        {"alpha_dual_pair", "alpha-connections",
         "dual of the alpha-connection is the (-alpha)-connection; Codazzi for the pair", false, 1e-7,
         {}, check_alpha_dual_pair},
        {"codazzi", "Codazzi equation",
         "(nabla_X g)(Y,Z) = (nabla_Y g)(X,Z) for the ambient pair", false, 1e-7, {}, check_codazzi},
        {"difference_tensor", "difference tensor",
         "K = nabla - LC = 1/2 (nabla - nabla*), symmetric, totally symmetric when lowered", false,
         1e-9, {}, check_difference_tensor},
        {"dual_involution", "dual connection", "dual of the dual connection is the connection",
         false, 1e-8, {}, check_dual_involution},
        {"frame_identities", "frame identities",
         "screen/transversal identities of the Levi-Civita split and their dual-mixed analogues",
         true, 1e-7, {}, check_frame_identities},
        {"gauss_weingarten_reconstruction", "Gauss-Weingarten formulas",
         "frame expansion reproduces ambient derivatives; h symmetric; induced connections torsion free",
         true, 1e-7, {}, check_reconstruction},
        {"hessian_constant_fit", "Hessian curvature",
         "fit (nabla_X K)(Y,Z) = -c/2 {g(X,Y)Z + g(X,Z)Y}; residual is the fit deviation", false,
         1e-6, {"expected_c"}, check_hessian_constant_fit},
        {"lemma_3_11_parallel_hs", "Lemma 3.11",
         "g(nabla_X h^s(Y,Z), U) = g(nabla*_Y h*s(X,U), Z); parallel h^s under autoparallel hypotheses",
         true, 1e-5, {}, check_lemma_3_11},
        {"lemma_3_2", "Lemma 3.2",
         "antisymmetrized nabla g, shape operator and nabla^l g identities of the induced pair", true,
         1e-6, {}, check_lemma_3_2},
        {"lemma_3_3", "Lemma 3.3", "dual mirror of Lemma 3.2", true, 1e-6, {}, check_lemma_3_3},
        {"lemma_3_5", "Lemma 3.5", "mixed duality identities between the induced pairs", true, 1e-6,
         {}, check_lemma_3_5},
        {"statistical_curvature", "statistical curvature",
         "symmetries and Bianchi identity of S, tangential/transversal decomposition, constant-c fit",
         false, 1e-5, {"expected_c"}, check_statistical_curvature},
        {"thm_3_10_autoparallel_curvature", "Theorem 3.10",
         "autoparallel submanifold: ambient curvature equals induced curvature on tangent vectors", true,
         1e-5, {}, check_theorem_3_10},
        {"thm_3_13_ricci_symmetry", "Theorem 3.13",
         "dual-autoparallel: induced statistical Ricci tensor is symmetric", true, 2e-5, {},
         check_theorem_3_13},
        {"thm_3_14_ricci_symmetry", "Theorem 3.14",
         "irrotational, constant c, parallel screen, D^l = 0: Ricci tensor symmetric", true, 2e-5, {},
         check_theorem_3_14},
        {"thm_3_15_ricci_symmetry", "Theorem 3.15",
         "constant c, D^s = 0, parallel transversal bundle: Ricci tensor symmetric", true, 2e-5, {},
         check_theorem_3_15},
        {"thm_3_1_dual_metric", "Theorem 3.1",
         "nabla g + nabla* g = 0 and the K forms of nabla g, nabla* g", false, 1e-7, {},
         check_dual_metric},
        {"thm_3_6_killing_radical", "Theorem 3.6",
         "radical Killing <=> nabla xi radical <=> A'_xi = 0", true, 1e-6, {}, check_theorem_3_6},
        {"thm_3_7_screen_integrable", "Theorem 3.7",
         "screen integrable <=> A_N self adjoint on the screen <=> h' symmetric", true, 1e-6, {},
         check_theorem_3_7},
        {"thm_3_8_radical_integrable", "Theorem 3.8", "radical distribution is integrable", true,
         1e-6, {}, check_theorem_3_8},
        {"thm_3_9_gauss_codazzi_ricci", "Theorem 3.9",
         "Gauss, Codazzi and Ricci equations for nabla and nabla*", true, 1e-5, {},
         check_gauss_codazzi_ricci},
    };
    std::sort(v.begin(), v.end(), [](const CheckInfo& a, const CheckInfo& b) { return a.id < b.id; });
    return v;
  }();
  return reg;
}

const CheckInfo* find_check(const std::string& id) {
  for (const CheckInfo& c : check_registry())
    if (c.id == id) return &c;
  return nullptr;
}

CheckResult run_check(const std::string& id, const Pipeline& p, std::optional<double> tolerance,
                      const CheckParams& params) {
  const CheckInfo* info = find_check(id);
  if (!info) throw ScenarioParseError("unknown check id '" + id + "'");
  if (info->needs_submanifold && !p.has_submanifold())
    throw ScenarioParseError("check '" + id + "' needs a submanifold");
  for (const auto& kv : params)
    if (std::find(info->params.begin(), info->params.end(), kv.first) == info->params.end())
      throw ScenarioParseError("check '" + id + "' has no parameter '" + kv.first + "'");
  CheckContext ctx{p, tolerance.value_or(info->default_tolerance), params};
  CheckResult r = info->run(ctx);
  r.check_id = id;
  return r;
}

}  // namespace statgeo
