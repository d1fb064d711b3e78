#pragma once

// Residual checks for the identities and theorems of statistical lightlike
// geometry. A Pipeline owns the ambient structure, the optional submanifold,
// the sample lattice and the per-point data shared by all checks.

#include "statgeo/lightlike.hpp"
#include "statgeo/manifold.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace statgeo {

struct Numerics {
  double fd_step = 1e-3;
  double rank_tol = 1e-9;
  unsigned long long seed = 1;
  int samples = 20;
  int sub_samples = 0;  // submanifold lattice size, 0 -> samples
};

struct PipelineOptions {
  Numerics numerics;
  int threads = 0;  // 0 -> thread_budget()
  /// Added to one coefficient of h^l (negative controls).
  double corrupt_h_l = 0.0;
  /// nabla^(-alpha) when the ambient is an alpha-connection family.
  std::optional<AffineConnection> alpha_partner;
};

class Pipeline {
 public:
  /// Throws RankNotConstant, PivotBreakdown, SingularPairing, ... from the
  /// frame construction at the chart center.
  Pipeline(StatisticalStructure ambient, std::optional<Immersion> submanifold,
           PipelineOptions options = {});

  const StatisticalStructure& ambient() const { return ambient_; }
  const PipelineOptions& options() const { return options_; }
  FdOptions fd() const { return {options_.numerics.fd_step, FdScheme::Central4}; }
  int threads() const;

  bool has_submanifold() const { return submanifold_.has_value(); }
  const Immersion& immersion() const { return *submanifold_; }
  const FramePlan& plan() const { return plan_; }
  int lightlike_rank() const { return plan_.layout.r; }

  const std::vector<Vec>& ambient_points() const { return ambient_points_; }
  const std::vector<Vec>& sub_points() const { return sub_points_; }

  /// Per-point data at sub_points(), computed once on first use.
  const std::vector<PointData>& point_data() const;
  const std::vector<InducedCurvatures>& curvatures() const;

 private:
  StatisticalStructure ambient_;
  std::optional<Immersion> submanifold_;
  PipelineOptions options_;
  FramePlan plan_;
  std::vector<Vec> ambient_points_;
  std::vector<Vec> sub_points_;
  mutable std::once_flag data_once_;
  mutable std::vector<PointData> data_;
  mutable std::vector<InducedCurvatures> curv_;
};

enum class Outcome { Passed, Failed, NotApplicable };
const char* outcome_name(Outcome o);

struct Witness {
  Vec point;
  std::string where;  // sub-residual name and frame indices
  double residual = 0.0;
};

struct HypothesisReport {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  bool holds = false;
};

struct CheckResult {
  std::string check_id;
  Outcome outcome = Outcome::Failed;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;  // max_residual <= tolerance
  std::vector<std::pair<std::string, double>> sub_residuals;
  std::vector<Witness> witnesses;  // worst first, at most 5
  std::vector<HypothesisReport> hypotheses;
  std::vector<std::pair<std::string, double>> extras;
  std::string note;
};

using CheckParams = std::map<std::string, double>;

struct CheckContext {
  const Pipeline& pipeline;
  double tolerance;
  const CheckParams& params;
};

struct CheckInfo {
  std::string id;
  std::string label;        // e.g. "Theorem 3.13"
  std::string description;  // one line
  bool needs_submanifold = false;
  double default_tolerance = 1e-7;
  std::vector<std::string> params;  // accepted parameter names
  std::function<CheckResult(const CheckContext&)> run;
};

/// Sorted by id.
const std::vector<CheckInfo>& check_registry();
const CheckInfo* find_check(const std::string& id);

CheckResult run_check(const std::string& id, const Pipeline& p, std::optional<double> tolerance = {},
                      const CheckParams& params = {});

/// Running maxima per named sub-residual plus the five worst witnesses.
/// Deterministic for a fixed insertion order.
class Residuals {
 public:
  void add(const std::string& sub, double r, const Vec& point, const std::string& indices = {});
  /// Registers a sub-residual with value 0 if it was never added (vacuous case).
  void touch(const std::string& sub);
  double max() const;
  double max(const std::string& sub) const;
  void write(CheckResult& out) const;

 private:
  std::vector<std::pair<std::string, double>> subs_;
  std::vector<Witness> worst_;
  std::vector<size_t> order_;
  size_t seq_ = 0;
};

/// Fills outcome / passed from max_residual and tolerance, with
/// NotApplicable when `applicable` is false.
void finalize(CheckResult& r, bool applicable);

// Individual checks, also reachable through the registry.
CheckResult check_codazzi(const CheckContext& c);
CheckResult check_dual_metric(const CheckContext& c);
CheckResult check_dual_involution(const CheckContext& c);
CheckResult check_difference_tensor(const CheckContext& c);
CheckResult check_alpha_dual_pair(const CheckContext& c);
CheckResult check_hessian_constant_fit(const CheckContext& c);
CheckResult check_statistical_curvature(const CheckContext& c);
CheckResult check_frame_identities(const CheckContext& c);
CheckResult check_reconstruction(const CheckContext& c);
CheckResult check_lemma_3_2(const CheckContext& c);
CheckResult check_lemma_3_3(const CheckContext& c);
CheckResult check_lemma_3_5(const CheckContext& c);
CheckResult check_theorem_3_6(const CheckContext& c);
CheckResult check_theorem_3_7(const CheckContext& c);
CheckResult check_theorem_3_8(const CheckContext& c);
CheckResult check_gauss_codazzi_ricci(const CheckContext& c);
CheckResult check_theorem_3_10(const CheckContext& c);
CheckResult check_lemma_3_11(const CheckContext& c);
CheckResult check_theorem_3_13(const CheckContext& c);
CheckResult check_theorem_3_14(const CheckContext& c);
CheckResult check_theorem_3_15(const CheckContext& c);

}  // namespace statgeo
