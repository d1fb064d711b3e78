#include "statgeo/fixtures.hpp"

#include "statgeo/errors.hpp"

namespace statgeo {

namespace {

Mat eta(int dim, int index) {
  Mat g = Mat::Identity(dim, dim);
  for (int i = 0; i < index; ++i) g(i, i) = -1.0;
  return g;
}

}  // namespace

ChartedManifold flat_space(int dim, int index, double half_width) {
  if (dim < 1 || index < 0 || index > dim)
    throw FixtureConstructionError("flat_space: bad dimension or index");
  ChartedManifold m;
  m.dim = dim;
  m.index_q = index;
  m.name = index == 0 ? "euclidean" : "flat_index_" + std::to_string(index);
  m.domain.lower = Vec::Constant(dim, -half_width);
  m.domain.upper = Vec::Constant(dim, half_width);
  const Mat g = eta(dim, index);
  m.metric_at = [g](const Vec&) { return g; };
  return m;
}

ChartedManifold pseudo_hyperbolic_space(int dim, int index, int axis) {
  if (dim < 2 || index < 0 || index >= dim || axis < 0 || axis >= dim)
    throw FixtureConstructionError("pseudo_hyperbolic_space: bad dimension, index or axis");
  ChartedManifold m;
  m.dim = dim;
  m.index_q = index;
  m.name = "pseudo_hyperbolic";
  m.domain.lower = Vec::Constant(dim, -1.0);
  m.domain.upper = Vec::Constant(dim, 1.0);
  m.domain.lower(axis) = 0.5;
  m.domain.upper(axis) = 2.0;
  const Mat g = eta(dim, index);
  m.metric_at = [g, axis](const Vec& x) { return Mat(g / (x(axis) * x(axis))); };
  return m;
}

StatisticalStructure levi_civita_structure(const ChartedManifold& m, const FdOptions& fd) {
  StatisticalStructure s = make_statistical_structure(m, levi_civita(m, fd), fd);
  s.description = m.name + " levi_civita";
  return s;
}

StatisticalStructure constant_K_structure(const ChartedManifold& m, const Vec& v,
                                          const FdOptions& fd) {
  if (v.size() != m.dim) throw FixtureConstructionError("constant_K: V has the wrong dimension");
  StatisticalStructure s = connection_from_K(m, constant_vector_cubic(m.metric_at, v), fd);
  s.description = m.name + " constant_K";
  return s;
}

Vec default_K_vector(int dim) {
  Vec v = Vec::Zero(dim);
  v(dim >= 2 ? dim - 2 : 0) = 1.0;
  return v;
}

}  // namespace statgeo
