#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "stableop/geometry.hpp"
#include "stableop/vec.hpp"

namespace stableop {

enum class Smoothness { C0, C1, C2 };
enum class Interp { Linear, Cubic };

/// A function on R^d given either by a closed-form rule or by grid samples
/// (d=1), together with a declared exterior extension and smoothness tag.
/// When a support domain is attached, the rule applies inside it and the
/// exterior extension (zero by default) outside; the support boundary is
/// treated as a smoothness breakpoint along rays.
class SampledFunction {
 public:
  static SampledFunction callable(int dim,
                                  std::function<double(const Vec&)> f,
                                  Smoothness tag = Smoothness::C2);
  static SampledFunction grid1d(std::vector<double> nodes,
                                std::vector<double> values, Interp interp,
                                Smoothness tag = Smoothness::C1);

  SampledFunction& with_support(Domain d);
  SampledFunction& with_exterior(std::function<double(const Vec&)> ext);
  SampledFunction& with_kinks(std::vector<Vec> kinks);
  SampledFunction& with_smoothness(Smoothness tag);

  int dim() const { return dim_; }
  Smoothness smoothness() const { return tag_; }
  bool zero_exterior() const { return support_ && !exterior_; }
  const Domain* support() const { return support_.get(); }

  double operator()(const Vec& x) const;

  /// Positive radii where the integrand along x +- r*theta may lose
  /// smoothness (support crossings, declared kinks, grid range ends).
  std::vector<double> ray_breakpoints(const Vec& x, const Vec& theta) const;
  /// Radius beyond which both branches of the ray are outside the support
  /// (infinity when there is no compact support).
  double support_radius(const Vec& x, const Vec& theta) const;
  /// Distance from x to the nearest declared smoothness breakpoint.
  double nearest_breakpoint_distance(const Vec& x) const;

  SampledFunction positive_part() const;
  SampledFunction scaled(double a) const;
  static SampledFunction linear_combination(double a, const SampledFunction& u,
                                            double b, const SampledFunction& v);
  SampledFunction translated(const Vec& h) const;

 private:
  double rule_value(const Vec& x) const;

  int dim_ = 1;
  std::function<double(const Vec&)> f_;
  // grid payload (d=1)
  std::vector<double> nodes_, values_;
  Interp interp_ = Interp::Linear;
  bool is_grid_ = false;

  std::shared_ptr<const Domain> support_;
  std::function<double(const Vec&)> exterior_;
  std::vector<Vec> kinks_;
  Smoothness tag_ = Smoothness::C2;
};

/// C^infty bump c * exp(-1/(1 - |x-center|^2/width^2)) on |x-center|<width,
/// zero outside, with peak value `height` at the center.
SampledFunction bump_function(const Vec& center, double width,
                              double height = 1.0);

}  // namespace stableop
