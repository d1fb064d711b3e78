#include "statgeo/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace statgeo {

Vec Tensor3::contract(const Vec& x, const Vec& y) const {
  Vec out = Vec::Zero(dim_);
  for (int k = 0; k < dim_; ++k) {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) {
      if (x(i) == 0.0) continue;
      for (int j = 0; j < dim_; ++j) s += (*this)(k, i, j) * x(i) * y(j);
    }
    out(k) = s;
  }
  return out;
}

Tensor3 Tensor3::lowered(const Mat& g) const {
  Tensor3 out(dim_);
  for (int l = 0; l < dim_; ++l)
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) {
        double s = 0.0;
        for (int k = 0; k < dim_; ++k) s += g(l, k) * (*this)(k, i, j);
        out(l, i, j) = s;
      }
  return out;
}

Tensor3 Tensor3::raised(const Mat& g_inv) const { return lowered(g_inv); }

double Tensor3::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

Tensor3& Tensor3::operator+=(const Tensor3& o) {
  for (size_t n = 0; n < data_.size(); ++n) data_[n] += o.data_[n];
  return *this;
}
Tensor3& Tensor3::operator-=(const Tensor3& o) {
  for (size_t n = 0; n < data_.size(); ++n) data_[n] -= o.data_[n];
  return *this;
}
Tensor3& Tensor3::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Tensor3 operator+(Tensor3 a, const Tensor3& b) { return a += b; }
Tensor3 operator-(Tensor3 a, const Tensor3& b) { return a -= b; }
Tensor3 operator*(Tensor3 a, double s) { return a *= s; }
Tensor3 operator*(double s, Tensor3 a) { return a *= s; }

Vec Tensor4::apply(const Vec& x, const Vec& y, const Vec& z) const {
  Vec out = Vec::Zero(dim_);
  for (int k = 0; k < dim_; ++k) {
    double s = 0.0;
    for (int l = 0; l < dim_; ++l) {
      if (z(l) == 0.0) continue;
      for (int i = 0; i < dim_; ++i) {
        if (x(i) == 0.0) continue;
        for (int j = 0; j < dim_; ++j) s += (*this)(k, l, i, j) * z(l) * x(i) * y(j);
      }
    }
    out(k) = s;
  }
  return out;
}

double Tensor4::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

Tensor4& Tensor4::operator+=(const Tensor4& o) {
  for (size_t n = 0; n < data_.size(); ++n) data_[n] += o.data_[n];
  return *this;
}
Tensor4& Tensor4::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Tensor4 operator+(Tensor4 a, const Tensor4& b) { return a += b; }
Tensor4 operator*(Tensor4 a, double s) { return a *= s; }

}  // namespace statgeo
