#pragma once

// Statistical structures from one-dimensional parametric density families
// (Fisher metric and alpha-connections by Gauss-Hermite quadrature), plus the
// hyperbolic upper half-space structure.

#include "statgeo/finite_difference.hpp"
#include "statgeo/manifold.hpp"
#include "statgeo/tensor.hpp"
#include "statgeo/types.hpp"

#include <functional>
#include <string>

namespace statgeo {

/// Probabilists' Gauss-Hermite rule: sum_i w_i f(z_i) ~ int f(z) exp(-z^2/2) dz.
struct GaussHermiteRule {
  Vec nodes;
  Vec weights;
};

/// Cached per node count; thread safe.
const GaussHermiteRule& gauss_hermite(int n);

struct ParametricDensityFamily {
  std::string name;
  int param_dim = 0;
  std::function<double(double x, const Vec& theta)> log_density;
  /// Affine map x = loc + scale z applied before quadrature.
  std::function<std::pair<double, double>(const Vec& theta)> standardize;
  Box param_box;
};

struct QuadratureOptions {
  int nodes = 96;
  bool check_convergence = true;
  double convergence_tol = 1e-8;
  FdOptions score{1e-3, FdScheme::Central4};
  FdOptions second{1e-3, FdScheme::Central4};
};

/// int f(x) p(x | theta) dx with the family's standardizing transform.
/// Throws NonFiniteDensity.
double expectation(const ParametricDensityFamily& f, const Vec& theta,
                   const std::function<double(double)>& integrand, int nodes);

/// G_ij = E[d_i log p d_j log p]. Throws QuadratureDivergence, NonFiniteDensity.
Mat fisher_metric(const ParametricDensityFamily& f, const Vec& theta,
                  const QuadratureOptions& q = {});

/// First-kind symbols E[(d_i d_j log p + (1 - alpha)/2 d_i log p d_j log p) d_k log p],
/// stored as (k, i, j).
Tensor3 alpha_connection_first_kind(const ParametricDensityFamily& f, double alpha,
                                    const Vec& theta, const QuadratureOptions& q = {});

/// Index raised with the inverse Fisher metric. Throws SingularFisherMetric.
Tensor3 alpha_connection(const ParametricDensityFamily& f, double alpha, const Vec& theta,
                         const QuadratureOptions& q = {});

/// Score expectations E[d_i log p] and normalization E[1], for consistency checks.
struct ScoreCheck {
  double normalization = 0.0;
  Vec score_mean;
};
ScoreCheck score_check(const ParametricDensityFamily& f, const Vec& theta,
                       const QuadratureOptions& q = {});

/// Fisher metric as a chart over the family's parameter box.
ChartedManifold fisher_manifold(const ParametricDensityFamily& f, const QuadratureOptions& q = {});

/// (Fisher metric, alpha-connection) as a statistical structure.
StatisticalStructure alpha_structure(const ParametricDensityFamily& f, double alpha,
                                     const FdOptions& fd = {}, const QuadratureOptions& q = {});

/// Normal densities with theta = (mu, sigma), sigma > 0; parameter box
/// mu in [-1, 1], sigma in [0.5, 2].
ParametricDensityFamily normal_family_fixture();

/// Metric (y^{n+1})^{-2} sum dy^A dy^A on the upper half-space of dimension
/// n + 1 with the flat-Hessian connection
/// nabla_{d_i} d_j = 2 delta_ij / y^{n+1} d_{n+1} (i, j <= n),
/// nabla_{d_{n+1}} d_{n+1} = 1 / y^{n+1} d_{n+1}, all others zero.
/// Box [-1, 1]^n x [0.5, 2].
StatisticalStructure upper_half_space_fixture(int n, const FdOptions& fd = {});
ChartedManifold upper_half_space_manifold(int n);

}  // namespace statgeo
