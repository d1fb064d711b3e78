#pragma once

#include "statgeo/types.hpp"

#include <type_traits>
#include <vector>

namespace statgeo {

enum class FdScheme { Central2, Central4 };

struct FdOptions {
  double step = 1e-3;
  FdScheme scheme = FdScheme::Central4;
};

/// Directional derivative of f at x along dir. f may return any type that
/// supports subtraction and scaling by double (double, Vec, Mat, Tensor3).
template <class F>
auto directional_derivative(const F& f, const Vec& x, const Vec& dir, const FdOptions& opt) {
  using R = std::decay_t<decltype(f(x))>;
  const double h = opt.step;
  if (opt.scheme == FdScheme::Central2) {
    R fp = f(Vec(x + h * dir));
    R fm = f(Vec(x - h * dir));
    R out = (fp - fm) * (1.0 / (2.0 * h));
    return out;
  }
  R f2p = f(Vec(x + 2.0 * h * dir));
  R f1p = f(Vec(x + h * dir));
  R f1m = f(Vec(x - h * dir));
  R f2m = f(Vec(x - 2.0 * h * dir));
  R out = ((f1p - f1m) * 8.0 - (f2p - f2m)) * (1.0 / (12.0 * h));
  return out;
}

template <class F>
auto partial_derivative(const F& f, const Vec& x, int axis, const FdOptions& opt) {
  Vec dir = Vec::Zero(x.size());
  dir(axis) = 1.0;
  return directional_derivative(f, x, dir, opt);
}

/// Offsets (in units of the step) and weights of the stencil, so callers that
/// evaluate expensive fields once per stencil point can reuse the values.
struct Stencil {
  std::vector<double> offsets;
  std::vector<double> weights;  // divide the weighted sum by the step
};

inline Stencil stencil(FdScheme scheme) {
  if (scheme == FdScheme::Central2) return {{1.0, -1.0}, {0.5, -0.5}};
  return {{2.0, 1.0, -1.0, -2.0}, {-1.0 / 12.0, 8.0 / 12.0, -8.0 / 12.0, 1.0 / 12.0}};
}

}  // namespace statgeo
