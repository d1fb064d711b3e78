#pragma once

#include "statgeo/types.hpp"

#include <vector>

namespace statgeo {

/// Three-index array T^k_ij stored densely; used for Christoffel symbols and
/// difference tensors. Index order in operator() is (k, i, j).
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(int dim) : dim_(dim), data_(static_cast<size_t>(dim) * dim * dim, 0.0) {}

  int dim() const { return dim_; }
  double& operator()(int k, int i, int j) { return data_[idx(k, i, j)]; }
  double operator()(int k, int i, int j) const { return data_[idx(k, i, j)]; }

  /// (T(X, Y))^k = T^k_ij X^i Y^j
  Vec contract(const Vec& x, const Vec& y) const;
  /// Lowers the upper index with a metric: result(l, i, j) = g_lk T^k_ij.
  Tensor3 lowered(const Mat& g) const;
  /// Raises the first index with an inverse metric.
  Tensor3 raised(const Mat& g_inv) const;
  double max_abs() const;

  Tensor3& operator+=(const Tensor3& o);
  Tensor3& operator-=(const Tensor3& o);
  Tensor3& operator*=(double s);

  const std::vector<double>& data() const { return data_; }

 private:
  size_t idx(int k, int i, int j) const {
    return (static_cast<size_t>(k) * dim_ + i) * dim_ + j;
  }
  int dim_ = 0;
  std::vector<double> data_;
};

Tensor3 operator+(Tensor3 a, const Tensor3& b);
Tensor3 operator-(Tensor3 a, const Tensor3& b);
Tensor3 operator*(Tensor3 a, double s);
Tensor3 operator*(double s, Tensor3 a);

/// Four-index array R^k_{l i j} with R(X, Y)Z = R^k_{lij} Z^l X^i Y^j.
class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(int dim)
      : dim_(dim), data_(static_cast<size_t>(dim) * dim * dim * dim, 0.0) {}

  int dim() const { return dim_; }
  double& operator()(int k, int l, int i, int j) { return data_[idx(k, l, i, j)]; }
  double operator()(int k, int l, int i, int j) const { return data_[idx(k, l, i, j)]; }

  /// Evaluates the (1,3) tensor as R(X, Y)Z.
  Vec apply(const Vec& x, const Vec& y, const Vec& z) const;
  double max_abs() const;

  Tensor4& operator+=(const Tensor4& o);
  Tensor4& operator*=(double s);

 private:
  size_t idx(int k, int l, int i, int j) const {
    return ((static_cast<size_t>(k) * dim_ + l) * dim_ + i) * dim_ + j;
  }
  int dim_ = 0;
  std::vector<double> data_;
};

Tensor4 operator+(Tensor4 a, const Tensor4& b);
Tensor4 operator*(Tensor4 a, double s);

using Tensor3Field = std::function<Tensor3(const Vec&)>;

}  // namespace statgeo
