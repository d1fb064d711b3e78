#pragma once

#include <Eigen/Dense>

#include <functional>
#include <string>

namespace statgeo {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Axis-aligned box in chart coordinates.
struct Box {
  Vec lower;
  Vec upper;

  int dim() const { return static_cast<int>(lower.size()); }
  Vec center() const { return 0.5 * (lower + upper); }
  bool contains(const Vec& x) const {
    return (x.array() >= lower.array()).all() && (x.array() <= upper.array()).all();
  }
};

using MetricField = std::function<Mat(const Vec&)>;
using VectorField = std::function<Vec(const Vec&)>;
using MatrixField = std::function<Mat(const Vec&)>;
using ScalarField = std::function<double(const Vec&)>;

}  // namespace statgeo
