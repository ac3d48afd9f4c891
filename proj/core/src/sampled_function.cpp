#include "stableop/sampled_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stableop {

SampledFunction SampledFunction::callable(int dim,
                                          std::function<double(const Vec&)> f,
                                          Smoothness tag) {
  SampledFunction u;
  u.dim_ = dim;
  u.f_ = std::move(f);
  u.tag_ = tag;
  return u;
}

SampledFunction SampledFunction::grid1d(std::vector<double> nodes,
                                        std::vector<double> values,
                                        Interp interp, Smoothness tag) {
  if (nodes.size() != values.size() || nodes.size() < 2)
    throw std::invalid_argument("grid needs matching nodes/values, >= 2");
  for (size_t i = 0; i + 1 < nodes.size(); ++i)
    if (!(nodes[i] < nodes[i + 1]))
      throw std::invalid_argument("grid nodes must be strictly increasing");
  SampledFunction u;
  u.dim_ = 1;
  u.is_grid_ = true;
  u.nodes_ = std::move(nodes);
  u.values_ = std::move(values);
  u.interp_ = interp;
  u.tag_ = tag;
  return u;
}

SampledFunction& SampledFunction::with_support(Domain d) {
  support_ = std::make_shared<Domain>(std::move(d));
  return *this;
}
SampledFunction& SampledFunction::with_exterior(
    std::function<double(const Vec&)> ext) {
  exterior_ = std::move(ext);
  return *this;
}
SampledFunction& SampledFunction::with_kinks(std::vector<Vec> kinks) {
  kinks_ = std::move(kinks);
  return *this;
}
SampledFunction& SampledFunction::with_smoothness(Smoothness tag) {
  tag_ = tag;
  return *this;
}

double SampledFunction::rule_value(const Vec& x) const {
  if (!is_grid_) return f_(x);
  double t = x[0];
  if (t <= nodes_.front() || t >= nodes_.back())
    return exterior_ ? exterior_(x) : 0.0;
  size_t j =
      std::upper_bound(nodes_.begin(), nodes_.end(), t) - nodes_.begin() - 1;
  j = std::min(j, nodes_.size() - 2);
  double h = nodes_[j + 1] - nodes_[j];
  double w = (t - nodes_[j]) / h;
  if (interp_ == Interp::Linear)
    return values_[j] * (1 - w) + values_[j + 1] * w;
  // Catmull-Rom with clamped one-sided tangents at the range ends.
  double y0 = j > 0 ? values_[j - 1] : 2 * values_[0] - values_[1];
  double y1 = values_[j], y2 = values_[j + 1];
  double y3 = j + 2 < values_.size() ? values_[j + 2]
                                     : 2 * values_.back() - values_[values_.size() - 2];
  double m1 = 0.5 * (y2 - y0), m2 = 0.5 * (y3 - y1);
  double w2 = w * w, w3 = w2 * w;
  return (2 * w3 - 3 * w2 + 1) * y1 + (w3 - 2 * w2 + w) * m1 +
         (-2 * w3 + 3 * w2) * y2 + (w3 - w2) * m2;
}

double SampledFunction::operator()(const Vec& x) const {
  if (support_ && support_->signed_distance(x) >= 0)
    return exterior_ ? exterior_(x) : 0.0;
  return rule_value(x);
}

std::vector<double> SampledFunction::ray_breakpoints(const Vec& x,
                                                     const Vec& theta) const {
  std::vector<double> out;
  auto add = [&out](double r) {
    r = std::abs(r);
    if (r > 0 && std::isfinite(r)) out.push_back(r);
  };
  if (support_) {
    if (auto c = support_->chord(x, theta)) {
      add(c->first);
      add(c->second);
    }
  }
  if (dim_ == 1) {
    for (const Vec& p : kinks_) add((p[0] - x[0]) / theta[0]);
    if (is_grid_) {
      add((nodes_.front() - x[0]) / theta[0]);
      add((nodes_.back() - x[0]) / theta[0]);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

double SampledFunction::support_radius(const Vec& x, const Vec& theta) const {
  if (!zero_exterior()) return std::numeric_limits<double>::infinity();
  auto c = support_->chord(x, theta);
  if (!c) return 0.0;
  return std::max(std::abs(c->first), std::abs(c->second));
}

double SampledFunction::nearest_breakpoint_distance(const Vec& x) const {
  double d = std::numeric_limits<double>::infinity();
  if (support_) d = std::min(d, support_->distance_to_boundary(x));
  for (const Vec& p : kinks_) d = std::min(d, (p - x).norm());
  if (is_grid_) {
    d = std::min(d, std::abs(x[0] - nodes_.front()));
    d = std::min(d, std::abs(x[0] - nodes_.back()));
  }
  return d;
}

SampledFunction SampledFunction::positive_part() const {
  SampledFunction self = *this;
  SampledFunction u = callable(
      dim_, [self](const Vec& x) { return std::max(0.0, self(x)); },
      Smoothness::C0);
  if (support_) u.support_ = support_;
  u.kinks_ = kinks_;
  if (exterior_) {
    auto ext = exterior_;
    u.exterior_ = [ext](const Vec& x) { return std::max(0.0, ext(x)); };
  }
  return u;
}

SampledFunction SampledFunction::scaled(double a) const {
  SampledFunction self = *this;
  SampledFunction u =
      callable(dim_, [self, a](const Vec& x) { return a * self(x); }, tag_);
  u.support_ = support_;
  u.kinks_ = kinks_;
  if (exterior_) {
    auto ext = exterior_;
    u.exterior_ = [ext, a](const Vec& x) { return a * ext(x); };
  }
  return u;
}

SampledFunction SampledFunction::linear_combination(double a,
                                                    const SampledFunction& u,
                                                    double b,
                                                    const SampledFunction& v) {
  SampledFunction uu = u, vv = v;
  Smoothness tag = std::min(u.tag_, v.tag_);
  SampledFunction w = callable(
      u.dim_, [uu, vv, a, b](const Vec& x) { return a * uu(x) + b * vv(x); },
      tag);
  // breakpoints: union of both operands' kink structure; the individual
  // support crossings are kept as kinks.
  std::vector<Vec> kinks = u.kinks_;
  kinks.insert(kinks.end(), v.kinks_.begin(), v.kinks_.end());
  if (u.dim_ == 1) {
    for (const SampledFunction* g : {&u, &v})
      if (g->support_) {
        if (auto c = g->support_->chord(Vec(0.0), Vec(1.0))) {
          kinks.push_back(Vec(c->first));
          kinks.push_back(Vec(c->second));
        }
      }
  }
  w.kinks_ = std::move(kinks);
  // a combination of compactly supported functions vanishes outside the
  // hull of the supports, which keeps the exact analytic tail available
  if (u.zero_exterior() && v.zero_exterior()) {
    BoundingBall b1 = u.support_->bounding_ball();
    BoundingBall b2 = v.support_->bounding_ball();
    if (u.dim_ == 1) {
      double lo = std::min(b1.center[0] - b1.radius, b2.center[0] - b2.radius);
      double hi = std::max(b1.center[0] + b1.radius, b2.center[0] + b2.radius);
      w.support_ = std::make_shared<Domain>(Domain::interval(lo, hi));
    } else {
      Vec d = b2.center - b1.center;
      double dist = d.norm();
      if (dist + b2.radius <= b1.radius) {
        w.support_ = std::make_shared<Domain>(Domain::ball(b1.center, b1.radius));
      } else if (dist + b1.radius <= b2.radius) {
        w.support_ = std::make_shared<Domain>(Domain::ball(b2.center, b2.radius));
      } else {
        double r = 0.5 * (b1.radius + b2.radius + dist);
        Vec c = dist > 0
                    ? b1.center + ((r - b1.radius) / dist) * d
                    : b1.center;
        w.support_ = std::make_shared<Domain>(Domain::ball(c, r));
      }
    }
  }
  return w;
}

SampledFunction SampledFunction::translated(const Vec& h) const {
  SampledFunction self = *this;
  SampledFunction u = callable(
      dim_, [self, h](const Vec& x) { return self(x - h); }, tag_);
  std::vector<Vec> kinks;
  for (const Vec& p : kinks_) kinks.push_back(p + h);
  u.kinks_ = std::move(kinks);
  if (support_) u.support_ = std::make_shared<Domain>(support_->translated(h));
  if (exterior_) {
    auto ext = exterior_;
    u.exterior_ = [ext, h](const Vec& x) { return ext(x - h); };
  }
  return u;
}

SampledFunction bump_function(const Vec& center, double width, double height) {
  int d = center.dim();
  SampledFunction u = SampledFunction::callable(
      d,
      [center, width, height](const Vec& x) {
        double t2 = (x - center).norm2() / (width * width);
        if (t2 >= 1.0) return 0.0;
        return height * std::exp(1.0 - 1.0 / (1.0 - t2));
      },
      Smoothness::C2);
  u.with_support(Domain::ball(center, width));
  return u;
}

}  // namespace stableop
