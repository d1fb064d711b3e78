#pragma once

// Lightlike submanifolds: immersions, adapted frames {xi, e, N, W} built as
// smooth fields over a parameter chart, and every induced object obtained by
// expanding ambient covariant derivatives of the frame in the frame itself.
//
// Frame index layout (D = m + n ambient dimension, r radical rank):
//   [0, r)          xi_i     radical
//   [r, m)          e_alpha  screen
//   [m, m + r)      N_i      lightlike transversal
//   [m + r, D)      W_a      screen transversal
// Tangent frame vectors are the first m columns.

#include "statgeo/finite_difference.hpp"
#include "statgeo/indefinite.hpp"
#include "statgeo/manifold.hpp"
#include "statgeo/types.hpp"

#include <string>
#include <vector>

namespace statgeo {

struct Immersion {
  std::string name;
  int param_dim = 0;
  ChartedManifold ambient;
  VectorField map;
  MatrixField jacobian;  // optional; finite differences of `map` when empty
  Box box;
  /// Optional m x m field whose columns (in parameter coordinates) are the
  /// candidate tangent vectors the screen is chosen from. Identity if empty.
  MatrixField screen_generator;

  Vec point(const Vec& u) const { return map(u); }
  Mat jacobian_at(const Vec& u, const FdOptions& fd = {}) const;
};

/// Gram array J^T g J of the jacobian columns.
SymBilinearForm induced_metric(const Immersion& im, const Vec& u, const FdOptions& fd = {});

/// Nullity of the induced metric, required to be the same at every sample.
/// Throws RankNotConstant.
int classify(const Immersion& im, const std::vector<Vec>& samples, double rank_tol = 1e-9,
             const FdOptions& fd = {});

struct FrameLayout {
  int m = 0;
  int n = 0;
  int r = 0;

  int dim() const { return m + n; }
  int screen_count() const { return m - r; }
  int perp_count() const { return n - r; }
  int ltr0() const { return m; }
  int scr0() const { return m + r; }
};

/// Discrete choices made once at the chart center and replayed everywhere.
struct FramePlan {
  FrameLayout layout;
  double rank_tol = 1e-9;
  std::vector<int> radical_pivots;
  std::vector<int> screen_choice;
  std::vector<int> normal_pivots;
  std::vector<int> perp_choice;
  std::vector<int> ltr_pivots;
  std::vector<int> ltr_candidates;
};

struct BundleFrame {
  FrameLayout layout;
  Mat xi;           // D x r
  Mat screen;       // D x (m - r)
  Mat ltr;          // D x r
  Mat perp;         // D x (n - r)
  Vec screen_signs;
  Vec perp_signs;
  Mat tangent;      // m x m, parameter coefficients of xi and screen vectors
  Mat full;         // D x D, columns in layout order
  Mat pairing;      // D x D, frame coefficients of v are pairing * v
  Mat gram;         // D x D, g(F_a, F_b)
};

FramePlan make_frame_plan(const Immersion& im, const Vec& u0, double rank_tol = 1e-9,
                          const FdOptions& fd = {});
/// Throws PivotBreakdown when the frozen choices degenerate at u and
/// RankNotConstant when the nullity differs from the plan.
BundleFrame bundle_frame(const Immersion& im, const FramePlan& plan, const Vec& u,
                         const FdOptions& fd = {});
BundleFrame bundle_frame_field(const Immersion& im, const Vec& u0, const Vec& u,
                               double rank_tol = 1e-9, const FdOptions& fd = {});

/// Frame coefficients of the ambient derivatives of the frame along the
/// tangent frame: phi[p](a, b) = component a of nabla_{t_p} F_b. The blocks
/// of phi[p] hold every induced object:
///   tangent x tangent     induced connection
///   ltr x tangent         h^l            scr x tangent   h^s
///   tangent x ltr         -A_N           ltr x ltr       nabla^l     scr x ltr  D^s
///   tangent x scr         -A_W           ltr x scr       D^l         scr x scr  nabla^s
struct ConnectionMatrices {
  std::vector<Mat> phi;  // one per tangent direction
  std::vector<Mat> raw;  // ambient coordinates of nabla_{t_p} F, D x D
};

/// Blocks of one connection matrix, named after the induced objects.
struct InducedBlocks {
  Mat nabla;        // m x m   nabla_{t_p} t_q = sum_a nabla(a, q) t_a
  Mat h_l;          // r x m
  Mat h_s;          // (n-r) x m
  Mat A_N;          // m x r   A_{N_i} t_p, column i
  Mat nabla_l;      // r x r
  Mat D_s;          // (n-r) x r
  Mat A_W;          // m x (n-r)
  Mat D_l;          // r x (n-r)
  Mat nabla_s;      // (n-r) x (n-r)
  Mat h_prime;      // r x (m-r)   radical part of nabla_{t_p} e_alpha
  Mat A_prime_xi;   // (m-r) x r   A'_{xi_i} t_p, column i
  Mat nabla_prime;  // (m-r) x (m-r)
  Mat nabla_prime_t;  // r x r
};

InducedBlocks split_blocks(const Mat& phi, const FrameLayout& l);

/// Induced package at a point for one ambient connection.
ConnectionMatrices connection_matrices(const Immersion& im, const FramePlan& plan,
                                       const AffineConnection& c, const Vec& u,
                                       const FdOptions& fd = {});

struct InducedPackage {
  BundleFrame frame;
  std::vector<InducedBlocks> nabla;  // per tangent direction
  std::vector<InducedBlocks> star;
  std::vector<InducedBlocks> levi_civita;
};

InducedPackage gauss_weingarten(const Immersion& im, const FramePlan& plan,
                                const StatisticalStructure& s, const Vec& u,
                                const FdOptions& fd = {});

/// Everything the verifier needs at one sample point, including derivatives
/// of the connection matrices along the tangent frame and ambient curvature
/// expressed in the frame.
struct ConnectionData {
  std::vector<Mat> phi;         // [p]
  std::vector<Mat> raw;         // [p]
  std::vector<Mat> dphi;        // [p * m + q] = t_p(phi[q])
  std::vector<Mat> structure;   // [p * m + q] = curvature of phi as a connection matrix
  std::vector<Mat> ambient;     // [p * m + q] = frame matrix of Rbar(t_p, t_q), from the ambient tensor
};

struct PointData {
  Vec u;
  Vec x;
  BundleFrame frame;
  Mat jacobian;
  std::vector<Mat> dgram;            // [p] = t_p(gram)
  std::vector<Vec> bracket;          // [p * m + q] = tangent-frame coefficients of [t_p, t_q]
  std::vector<Mat> lie_radical;      // [i] = (L_{xi_i} g)(t_p, t_q), m x m
  ConnectionData nabla;
  ConnectionData star;
  ConnectionData levi_civita;
  Tensor4 ambient_S;                 // statistical curvature at x, ambient coordinates
  Mat ambient_metric;
};

struct PointOptions {
  FdOptions fd;
  bool curvature = true;  // derivatives of phi and ambient curvature
};

PointData compute_point_data(const Immersion& im, const FramePlan& plan,
                             const StatisticalStructure& s, const Vec& u,
                             const PointOptions& opt = {});

/// Tangent-block curvature R(t_p, t_q) of the induced connection, m x m.
Mat induced_curvature(const ConnectionData& c, const std::vector<Vec>& bracket, const FrameLayout& l,
                      int p, int q);
/// Curvature of the transversal connections on ltr (r x r) and scr ((n-r) x (n-r)).
Mat ltr_curvature(const ConnectionData& c, const std::vector<Vec>& bracket, const FrameLayout& l,
                  int p, int q);
Mat scr_curvature(const ConnectionData& c, const std::vector<Vec>& bracket, const FrameLayout& l,
                  int p, int q);

struct InducedCurvatures {
  std::vector<Mat> R;       // [p * m + q], m x m
  std::vector<Mat> R_star;
  std::vector<Mat> S;       // 1/2 (R + R*)
  std::vector<Mat> R_l;     // r x r
  std::vector<Mat> R_s;     // (n-r) x (n-r)
  Mat ricci;                // m x m, Ric(t_p, t_q)
  double ricci_asymmetry = 0.0;
};

InducedCurvatures induced_curvatures(const PointData& d);

/// Builtin immersions in a given ambient chart. Throws FixtureConstructionError
/// on a dimension mismatch.
Immersion minkowski_lightlike_plane(const ChartedManifold& ambient);
Immersion light_cone(const ChartedManifold& ambient);
Immersion r2_lightlike_plane_6d(const ChartedManifold& ambient);
Immersion r2_lightlike_plane_7d(const ChartedManifold& ambient);
Immersion null_hyperplane_twisted_screen(const ChartedManifold& ambient);
Immersion euclidean_plane(const ChartedManifold& ambient);

}  // namespace statgeo
