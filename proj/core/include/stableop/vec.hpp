#pragma once

#include <array>
#include <cassert>
#include <cmath>
#include <initializer_list>
#include <vector>

namespace stableop {

/// Small point/direction type for dimensions 1..3.
class Vec {
 public:
  Vec() : dim_(1), v_{0, 0, 0} {}
  explicit Vec(double x) : dim_(1), v_{x, 0, 0} {}
  Vec(double x, double y) : dim_(2), v_{x, y, 0} {}
  Vec(double x, double y, double z) : dim_(3), v_{x, y, z} {}

  static Vec zero(int dim) {
    Vec p;
    p.dim_ = dim;
    return p;
  }
  static Vec unit(int dim, int axis) {
    Vec p = zero(dim);
    p.v_[axis] = 1.0;
    return p;
  }

  int dim() const { return dim_; }
  double operator[](int i) const { return v_[i]; }
  double& operator[](int i) { return v_[i]; }

  Vec operator+(const Vec& o) const {
    Vec r = *this;
    for (int i = 0; i < dim_; ++i) r.v_[i] += o.v_[i];
    return r;
  }
  Vec operator-(const Vec& o) const {
    Vec r = *this;
    for (int i = 0; i < dim_; ++i) r.v_[i] -= o.v_[i];
    return r;
  }
  Vec operator*(double a) const {
    Vec r = *this;
    for (int i = 0; i < dim_; ++i) r.v_[i] *= a;
    return r;
  }
  friend Vec operator*(double a, const Vec& p) { return p * a; }

  double dot(const Vec& o) const {
    double s = 0;
    for (int i = 0; i < dim_; ++i) s += v_[i] * o.v_[i];
    return s;
  }
  double norm2() const { return dot(*this); }
  double norm() const { return std::sqrt(norm2()); }

  Vec normalized() const {
    double n = norm();
    assert(n > 0);
    return *this * (1.0 / n);
  }

 private:
  int dim_;
  std::array<double, 3> v_;
};

}  // namespace stableop
