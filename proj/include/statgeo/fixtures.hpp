#pragma once

// Ambient charts and statistical structures used by the bundled scenarios.

#include "statgeo/manifold.hpp"
#include "statgeo/types.hpp"

namespace statgeo {

/// diag(-1 x index, +1 ...) on the box [-half_width, half_width]^dim.
ChartedManifold flat_space(int dim, int index, double half_width = 2.0);

/// eta / (x^axis)^2 with eta = diag(-1 x index, +1 ...), box [-1, 1]^dim except
/// x^axis in [0.5, 2]. Constant curvature -1 for the Levi-Civita connection.
ChartedManifold pseudo_hyperbolic_space(int dim, int index, int axis);

/// Levi-Civita connection as a statistical structure (K = 0).
StatisticalStructure levi_civita_structure(const ChartedManifold& m, const FdOptions& fd = {});

/// nabla = LC + K with C(X,Y,Z) = g(X,Y)g(V,Z) + g(X,V)g(Y,Z) + g(Y,V)g(X,Z).
StatisticalStructure constant_K_structure(const ChartedManifold& m, const Vec& v,
                                          const FdOptions& fd = {});

/// Coordinate vector e_{dim-2}, the default V of constant_K_structure.
Vec default_K_vector(int dim);

}  // namespace statgeo
