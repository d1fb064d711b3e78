#pragma once

// Charts, affine connections and the ambient statistical-geometry objects
// built on them. All derivatives are finite differences in chart coordinates.

#include "statgeo/finite_difference.hpp"
#include "statgeo/tensor.hpp"
#include "statgeo/types.hpp"

#include <string>
#include <vector>

namespace statgeo {

struct ChartedManifold {
  int dim = 0;
  int index_q = 0;
  MetricField metric_at;
  Box domain;
  std::string name;

  Mat metric(const Vec& x) const { return metric_at(x); }
  /// Throws SingularMetric or IndexChange when the metric at any point is
  /// degenerate or carries the wrong number of negative eigenvalues.
  void validate(const std::vector<Vec>& points, double rank_tol = 1e-9) const;
};

/// Inverse of a metric array; throws SingularMetric.
Mat metric_inverse(const Mat& g);

struct AffineConnection {
  Tensor3Field gamma_at;  // (k, i, j) -> Gamma^k_ij
  bool torsion_free = true;

  Tensor3 gamma(const Vec& x) const { return gamma_at(x); }
  /// Coordinate expression of nabla_X Y for constant coordinate fields.
  Vec apply(const Vec& x, const Vec& X, const Vec& Y) const { return gamma_at(x).contract(X, Y); }
};

/// Partial derivatives d_a g at x, one array per chart axis.
std::vector<Mat> metric_partials(const MetricField& g, const Vec& x, const FdOptions& fd);

Tensor3 levi_civita_at(const MetricField& g, const Vec& x, const FdOptions& fd);
AffineConnection levi_civita(const ChartedManifold& m, const FdOptions& fd = {});

Tensor3 dual_gamma_at(const MetricField& g, const Tensor3& gamma, const Vec& x,
                      const FdOptions& fd);
AffineConnection dual_connection(const ChartedManifold& m, const AffineConnection& nabla,
                                 const FdOptions& fd = {});

struct StatisticalStructure {
  ChartedManifold manifold;
  AffineConnection nabla;
  AffineConnection nabla_star;
  AffineConnection levi_civita;
  Tensor3Field K_at;  // nabla - Levi-Civita
  std::string description;
};

/// Wraps an arbitrary torsion-free connection: dual by the metric, K by
/// subtraction of the Levi-Civita connection.
StatisticalStructure make_statistical_structure(const ChartedManifold& m, AffineConnection nabla,
                                                const FdOptions& fd = {});

/// Totally symmetric covariant 3-form field C_abc.
using CubicFormField = Tensor3Field;

/// K^k_ij = g^kl C_lij, nabla = LC + K, nabla* = LC - K. Throws AsymmetricInput
/// when C is not totally symmetric at one of `check_points` (domain center if
/// none given).
StatisticalStructure connection_from_K(const ChartedManifold& m, CubicFormField c,
                                       const FdOptions& fd = {},
                                       const std::vector<Vec>& check_points = {});

/// C(X,Y,Z) = g(X,Y)g(V,Z) + g(X,V)g(Y,Z) + g(Y,V)g(X,Z) for a constant
/// coordinate vector V.
CubicFormField constant_vector_cubic(const MetricField& g, const Vec& v);

/// Seeded totally symmetric polynomial cubic form of degree <= `degree` in x,
/// coefficients uniform in [-1, 1] times `scale`.
CubicFormField random_symmetric_cubic(int dim, unsigned long long seed, int degree,
                                      double scale = 1.0);

/// Metric L(x)^T eta L(x) with L affine in x, eta = diag(-1 x index, 1 ...),
/// box [-0.5, 0.5]^dim. Index is constant on the box by construction.
ChartedManifold random_metric_manifold(int dim, int index, unsigned long long seed);

double max_symmetry_defect(const Tensor3& lowered_c);

/// (nabla_X g)(Y, Z) for constant coordinate fields Y, Z.
double nabla_metric(const MetricField& g, const AffineConnection& c, const Vec& x, const Vec& X,
                    const Vec& Y, const Vec& Z, const FdOptions& fd);

/// |(nabla_X g)(Y,Z) - (nabla_Y g)(X,Z)|
double codazzi_residual(const StatisticalStructure& s, const Vec& x, const Vec& X, const Vec& Y,
                        const Vec& Z, const FdOptions& fd = {});

/// Max over the identities tying nabla g, nabla* g and K together:
/// (nabla g) + (nabla* g) = 0, (nabla g) = -2 g(K), (nabla g) = (nabla* g) - 4 g(K),
/// (nabla* g) = 2 g(K).
double nabla_g_compat_residual(const StatisticalStructure& s, const Vec& x, const Vec& X,
                               const Vec& Y, const Vec& Z, const FdOptions& fd = {});

/// R^k_lij with R(X,Y)Z = R^k_lij Z^l X^i Y^j.
Tensor4 curvature_at(const AffineConnection& c, const Vec& x, const FdOptions& fd);

struct CurvatureTensor {
  AffineConnection connection;
  FdOptions fd;

  Tensor4 at(const Vec& x) const { return curvature_at(connection, x, fd); }
  Vec eval(const Vec& x, const Vec& X, const Vec& Y, const Vec& Z) const {
    return at(x).apply(X, Y, Z);
  }
};

CurvatureTensor curvature(const AffineConnection& c, const FdOptions& fd = {});

/// S = 1/2 (R + R*)
Tensor4 statistical_curvature_at(const StatisticalStructure& s, const Vec& x,
                                 const FdOptions& fd);

/// (nabla_a K)^k_ij stored as (k, a, i, j), covariant derivative with respect
/// to the statistical connection. The Hessian curvature is its negative.
Tensor4 nabla_K_at(const StatisticalStructure& s, const Vec& x, const FdOptions& fd);
Tensor4 hessian_curvature_at(const StatisticalStructure& s, const Vec& x, const FdOptions& fd);

/// Least-squares fit of a scalar c in T ~ c M over all collected components.
class ConstantFitter {
 public:
  void add(const Vec& target, const Vec& model);
  void add(double target, double model);

  struct Result {
    double c = 0.0;
    double deviation = 0.0;   // max |T - c M|
    double model_norm = 0.0;  // max |M|, zero means c is undetermined
    size_t count = 0;
  };
  Result finish() const;

 private:
  std::vector<double> t_;
  std::vector<double> m_;
};

/// Components of R(E_a,E_b)E_c and of {g(E_b,E_c)E_a - g(E_a,E_c)E_b}
/// in a g-orthonormal frame, for the constant-curvature fit.
void add_constant_curvature_samples(ConstantFitter& fitter, const Tensor4& r, const Mat& g);

/// Components of (nabla_{E_a} K)(E_b, E_c) and of
/// -1/2 {g(E_a,E_b)E_c + g(E_a,E_c)E_b} in a g-orthonormal frame.
void add_hessian_samples(ConstantFitter& fitter, const Tensor4& nabla_k, const Mat& g);

/// (L_X g)(Y, Z) for a vector field X and constant coordinate fields Y, Z.
double lie_derivative_metric(const MetricField& g, const VectorField& X, const Vec& x,
                             const Vec& Y, const Vec& Z, const FdOptions& fd = {});
double lie_derivative_metric(const ChartedManifold& m, const VectorField& X, const Vec& x,
                             const Vec& Y, const Vec& Z, const FdOptions& fd = {});

}  // namespace statgeo
