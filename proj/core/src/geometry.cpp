#include "stableop/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "stableop/quadrature.hpp"

namespace stableop {

namespace {

double cross2(const Vec& a, const Vec& b) { return a[0] * b[1] - a[1] * b[0]; }

double point_segment_distance(const Vec& p, const Vec& a, const Vec& b) {
  Vec d = b - a;
  double len2 = d.norm2();
  double t = len2 > 0 ? std::clamp((p - a).dot(d) / len2, 0.0, 1.0) : 0.0;
  return (p - (a + d * t)).norm();
}

/// Exact signed distance to a convex ccw polygon boundary.
double polygon_signed_distance(const Vec& x, const std::vector<Vec>& v) {
  const size_t n = v.size();
  double max_line = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < n; ++i) {
    const Vec& a = v[i];
    const Vec& b = v[(i + 1) % n];
    Vec e = b - a;
    double len = e.norm();
    // ccw polygon: outward normal is the edge direction rotated clockwise
    Vec nrm(e[1] / len, -e[0] / len);
    max_line = std::max(max_line, (x - a).dot(nrm));
  }
  if (max_line <= 0) return max_line;  // inside: exact for convex polygons
  double dmin = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < n; ++i)
    dmin = std::min(dmin, point_segment_distance(x, v[i], v[(i + 1) % n]));
  return dmin;
}

Vec polygon_centroid(const std::vector<Vec>& v) {
  double area2 = 0, cx = 0, cy = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    const Vec& a = v[i];
    const Vec& b = v[(i + 1) % v.size()];
    double w = cross2(a, b);
    area2 += w;
    cx += (a[0] + b[0]) * w;
    cy += (a[1] + b[1]) * w;
  }
  return Vec(cx / (3 * area2), cy / (3 * area2));
}

double polygon_area(const std::vector<Vec>& v) {
  double area2 = 0;
  for (size_t i = 0; i < v.size(); ++i)
    area2 += cross2(v[i], v[(i + 1) % v.size()]);
  return 0.5 * area2;
}

double polygon_perimeter(const std::vector<Vec>& v) {
  double p = 0;
  for (size_t i = 0; i < v.size(); ++i)
    p += (v[(i + 1) % v.size()] - v[i]).norm();
  return p;
}

void check_convex_ccw(const std::vector<Vec>& v) {
  if (v.size() < 3) throw std::invalid_argument("polygon needs >= 3 vertices");
  for (size_t i = 0; i < v.size(); ++i) {
    const Vec& a = v[i];
    const Vec& b = v[(i + 1) % v.size()];
    const Vec& c = v[(i + 2) % v.size()];
    if (cross2(b - a, c - b) <= 0)
      throw std::invalid_argument("polygon must be convex, counterclockwise");
  }
}

std::vector<Vec> inner_offset(const std::vector<Vec>& v, double depth) {
  // Move every edge line inward by `depth`, intersect consecutive lines.
  const size_t n = v.size();
  std::vector<Vec> pts(n), dirs(n);
  for (size_t i = 0; i < n; ++i) {
    Vec e = v[(i + 1) % n] - v[i];
    double len = e.norm();
    Vec d(e[0] / len, e[1] / len);
    Vec nrm(d[1], -d[0]);  // outward
    dirs[i] = d;
    pts[i] = v[i] - nrm * depth;
  }
  std::vector<Vec> out(n);
  for (size_t i = 0; i < n; ++i) {
    size_t j = (i + n - 1) % n;  // previous edge
    // Intersect line (pts[j], dirs[j]) with line (pts[i], dirs[i]).
    double denom = cross2(dirs[j], dirs[i]);
    if (std::abs(denom) < 1e-14)
      throw std::runtime_error("degenerate offset polygon");
    double t = cross2(pts[i] - pts[j], dirs[i]) / denom;
    out[i] = pts[j] + dirs[j] * t;
  }
  check_convex_ccw(out);
  return out;
}

double min_interior_angle(const std::vector<Vec>& v) {
  double amin = M_PI;
  for (size_t i = 0; i < v.size(); ++i) {
    const Vec& a = v[(i + v.size() - 1) % v.size()];
    const Vec& b = v[i];
    const Vec& c = v[(i + 1) % v.size()];
    Vec u = (a - b).normalized(), w = (c - b).normalized();
    amin = std::min(amin, std::acos(std::clamp(u.dot(w), -1.0, 1.0)));
  }
  return amin;
}

double polygon_inradius(const std::vector<Vec>& v) {
  // Coarse grid + refinement around the maximizer of the interior distance.
  Vec c = polygon_centroid(v);
  double best = -polygon_signed_distance(c, v);
  Vec bx = c;
  BoundingBall bb{c, 0};
  for (const Vec& p : v) bb.radius = std::max(bb.radius, (p - c).norm());
  double h = bb.radius;
  for (int round = 0; round < 6; ++round) {
    for (int i = -8; i <= 8; ++i)
      for (int j = -8; j <= 8; ++j) {
        Vec p(bx[0] + h * i / 8.0, bx[1] + h * j / 8.0);
        double d = -polygon_signed_distance(p, v);
        if (d > best) {
          best = d;
          bx = p;
        }
      }
    h /= 4;
  }
  return best;
}

}  // namespace

Domain Domain::interval(double a, double b) {
  if (!(a < b)) throw std::invalid_argument("interval needs a < b");
  Domain d;
  d.kind_ = Kind::Interval;
  d.dim_ = 1;
  d.a_ = a;
  d.b_ = b;
  return d;
}

Domain Domain::ball(Vec center, double radius) {
  if (!(radius > 0)) throw std::invalid_argument("ball needs radius > 0");
  Domain d;
  d.kind_ = Kind::Ball;
  d.dim_ = center.dim();
  d.center_ = center;
  d.radius_ = radius;
  return d;
}

Domain Domain::polygon(std::vector<Vec> vertices) {
  check_convex_ccw(vertices);
  Domain d;
  d.kind_ = Kind::Polygon;
  d.dim_ = 2;
  d.verts_ = std::move(vertices);
  return d;
}

Domain Domain::rounded_polygon(std::vector<Vec> vertices, double rho) {
  check_convex_ccw(vertices);
  if (!(rho > 0)) throw std::invalid_argument("fillet radius must be > 0");
  Domain d;
  d.kind_ = Kind::RoundedPolygon;
  d.dim_ = 2;
  d.verts_ = std::move(vertices);
  d.radius_ = rho;
  return d;
}

double Domain::signed_distance(const Vec& x) const {
  switch (kind_) {
    case Kind::Interval:
      return std::max(a_ - x[0], x[0] - b_);
    case Kind::Ball:
      return (x - center_).norm() - radius_;
    case Kind::Polygon:
      return polygon_signed_distance(x, verts_);
    case Kind::RoundedPolygon:
      return polygon_signed_distance(x, verts_) - radius_;
  }
  return 0;
}

std::optional<std::pair<double, double>> Domain::chord(const Vec& x,
                                                       const Vec& theta) const {
  switch (kind_) {
    case Kind::Interval: {
      double t = theta[0];
      if (t == 0) return std::nullopt;
      double r0 = (a_ - x[0]) / t, r1 = (b_ - x[0]) / t;
      if (r0 > r1) std::swap(r0, r1);
      return std::make_pair(r0, r1);
    }
    case Kind::Ball: {
      if (dim_ == 1) {
        double t = theta[0];
        if (t == 0) return std::nullopt;
        double r0 = (center_[0] - radius_ - x[0]) / t;
        double r1 = (center_[0] + radius_ - x[0]) / t;
        if (r0 > r1) std::swap(r0, r1);
        return std::make_pair(r0, r1);
      }
      Vec w = x - center_;
      double tt = theta.norm2();
      double b = w.dot(theta) / tt;
      double c = (w.norm2() - radius_ * radius_) / tt;
      double disc = b * b - c;
      if (disc <= 0) return std::nullopt;
      double sq = std::sqrt(disc);
      return std::make_pair(-b - sq, -b + sq);
    }
    case Kind::Polygon: {
      double lo = -std::numeric_limits<double>::infinity();
      double hi = std::numeric_limits<double>::infinity();
      for (size_t i = 0; i < verts_.size(); ++i) {
        const Vec& a = verts_[i];
        const Vec& b = verts_[(i + 1) % verts_.size()];
        Vec e = b - a;
        double len = e.norm();
        Vec nrm(e[1] / len, -e[0] / len);
        double denom = theta.dot(nrm);
        double num = (a - x).dot(nrm);
        if (std::abs(denom) < 1e-15) {
          if (num < 0) return std::nullopt;  // parallel and outside
        } else if (denom > 0) {
          hi = std::min(hi, num / denom);
        } else {
          lo = std::max(lo, num / denom);
        }
      }
      if (lo >= hi) return std::nullopt;
      return std::make_pair(lo, hi);
    }
    case Kind::RoundedPolygon: {
      // Signed distance is convex along the line; locate the minimum by
      // ternary search, then bisect on both sides for the rho level set.
      BoundingBall bb = bounding_ball();
      double L = (x - bb.center).norm() + bb.radius + 1.0;
      auto g = [&](double r) {
        return polygon_signed_distance(x + theta * r, verts_) - radius_;
      };
      double lo = -L, hi = L;
      for (int it = 0; it < 200; ++it) {
        double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
        if (g(m1) < g(m2))
          hi = m2;
        else
          lo = m1;
      }
      double rmin = 0.5 * (lo + hi);
      if (g(rmin) >= 0) return std::nullopt;
      auto bisect = [&](double inside, double outside) {
        for (int it = 0; it < 100; ++it) {
          double mid = 0.5 * (inside + outside);
          (g(mid) < 0 ? inside : outside) = mid;
        }
        return 0.5 * (inside + outside);
      };
      return std::make_pair(bisect(rmin, -L), bisect(rmin, L));
    }
  }
  return std::nullopt;
}

Domain Domain::translated(const Vec& h) const {
  Domain d = *this;
  switch (kind_) {
    case Kind::Interval:
      d.a_ += h[0];
      d.b_ += h[0];
      break;
    case Kind::Ball:
      d.center_ = center_ + h;
      break;
    case Kind::Polygon:
    case Kind::RoundedPolygon:
      for (Vec& v : d.verts_) v = v + h;
      break;
  }
  return d;
}

BoundingBall Domain::bounding_ball() const {
  switch (kind_) {
    case Kind::Interval:
      return {Vec(0.5 * (a_ + b_)), 0.5 * (b_ - a_)};
    case Kind::Ball:
      return {center_, radius_};
    case Kind::Polygon:
    case Kind::RoundedPolygon: {
      Vec c = polygon_centroid(verts_);
      double r = 0;
      for (const Vec& p : verts_) r = std::max(r, (p - c).norm());
      if (kind_ == Kind::RoundedPolygon) r += radius_;
      return {c, r};
    }
  }
  return {Vec(0.0), 1.0};
}

std::vector<Vec> Domain::boundary_sample(int n) const {
  std::vector<Vec> out;
  out.reserve(n);
  if (dim_ == 1) {
    double a = kind_ == Kind::Interval ? a_ : center_[0] - radius_;
    double b = kind_ == Kind::Interval ? b_ : center_[0] + radius_;
    for (int i = 0; i < n; ++i) out.push_back(Vec(i % 2 == 0 ? a : b));
    return out;
  }
  // Generic convex 2D: shoot rays from an interior point and bisect.
  Vec c = bounding_ball().center;
  double L = bounding_ball().radius + 1.0;
  for (int i = 0; i < n; ++i) {
    double phi = 2 * M_PI * i / n;
    Vec dir(std::cos(phi), std::sin(phi));
    double inside = 0, outside = L;
    for (int it = 0; it < 60; ++it) {
      double mid = 0.5 * (inside + outside);
      (signed_distance(c + dir * mid) < 0 ? inside : outside) = mid;
    }
    out.push_back(c + dir * (0.5 * (inside + outside)));
  }
  return out;
}

double Domain::volume() const {
  switch (kind_) {
    case Kind::Interval:
      return b_ - a_;
    case Kind::Ball:
      return dim_ == 1   ? 2 * radius_
             : dim_ == 2 ? M_PI * radius_ * radius_
                         : 4.0 / 3.0 * M_PI * radius_ * radius_ * radius_;
    case Kind::Polygon:
      return polygon_area(verts_);
    case Kind::RoundedPolygon:
      return polygon_area(verts_) + polygon_perimeter(verts_) * radius_ +
             M_PI * radius_ * radius_;
  }
  return 0;
}

double Domain::interval_a() const {
  if (kind_ != Kind::Interval) throw std::logic_error("not an interval");
  return a_;
}
double Domain::interval_b() const {
  if (kind_ != Kind::Interval) throw std::logic_error("not an interval");
  return b_;
}
Vec Domain::ball_center() const {
  if (kind_ != Kind::Ball) throw std::logic_error("not a ball");
  return center_;
}
double Domain::ball_radius() const {
  if (kind_ != Kind::Ball) throw std::logic_error("not a ball");
  return radius_;
}
const std::vector<Vec>& Domain::vertices() const {
  if (kind_ != Kind::Polygon && kind_ != Kind::RoundedPolygon)
    throw std::logic_error("not a polygon");
  return verts_;
}
double Domain::fillet_radius() const {
  if (kind_ != Kind::RoundedPolygon) throw std::logic_error("not rounded");
  return radius_;
}

bool Collar::contains(const Vec& x) const {
  double sd = parent->signed_distance(x);
  switch (kind) {
    case CollarKind::Thinned:
      return sd < -epsilon;
    case CollarKind::Thickened:
      return sd < epsilon;
    case CollarKind::BoundaryBand:
      return sd < 0 && sd > -epsilon;
  }
  return false;
}

Exhaustion::Exhaustion(const Domain& parent) : parent_(&parent) {
  switch (parent.kind()) {
    case Domain::Kind::Interval:
      eps0_ = 0.5 * (parent.interval_b() - parent.interval_a());
      lambda_ = 1.5;
      break;
    case Domain::Kind::Ball:
      eps0_ = parent.ball_radius();
      lambda_ = 1.5;
      break;
    case Domain::Kind::Polygon: {
      eps0_ = 0.45 * polygon_inradius(parent.vertices());
      // Fillet extreme points sit at depth (2 - sin(alpha/2)) * eps.
      lambda_ = std::max(1.5, 2.0 - std::sin(0.5 * min_interior_angle(
                                        parent.vertices())));
      break;
    }
    default:
      throw std::invalid_argument("exhaustion: unsupported parent domain");
  }
}

Domain Exhaustion::at(double eps) const {
  if (!(eps > 0) || !(eps < eps0_))
    throw std::out_of_range("exhaustion parameter outside (0, eps0)");
  switch (parent_->kind()) {
    case Domain::Kind::Interval:
      return Domain::interval(parent_->interval_a() + eps,
                              parent_->interval_b() - eps);
    case Domain::Kind::Ball:
      return Domain::ball(parent_->ball_center(),
                          parent_->ball_radius() - eps);
    case Domain::Kind::Polygon:
      return Domain::rounded_polygon(inner_offset(parent_->vertices(), 2 * eps),
                                     eps);
    default:
      throw std::logic_error("unreachable");
  }
}

namespace {

double bump_profile(double t) {
  double w = 1.0 - t * t;
  return w > 0 ? std::exp(-1.0 / w) : 0.0;
}

double profile_mass(int dim) {
  // integral of exp(-1/(1-|x|^2)) over the unit ball
  auto radial = [dim](double t) {
    double surf = dim == 1 ? 2.0 : dim == 2 ? 2 * M_PI * t : 4 * M_PI * t * t;
    return (dim == 1 ? 1.0 : surf) * bump_profile(t);
  };
  double s = 0;
  const int panels = 64;
  for (int i = 0; i < panels; ++i)
    s += quad::gauss_panel(radial, double(i) / panels, double(i + 1) / panels,
                           12);
  return dim == 1 ? 2 * s : s;  // d=1 handled as one-sided times 2
}

}  // namespace

double Mollifier::normalization(int dim) {
  static std::map<int, double> cache;
  static std::mutex m;
  std::lock_guard<std::mutex> lock(m);
  auto it = cache.find(dim);
  if (it == cache.end())
    it = cache.emplace(dim, 1.0 / profile_mass(dim)).first;
  return it->second;
}

Mollifier::Mollifier(int dim, double eps) : dim_(dim), eps_(eps) {
  if (!(eps > 0)) throw std::invalid_argument("mollifier eps must be > 0");
  norm_const_ = normalization(dim);
}

double Mollifier::profile(double t) const {
  return norm_const_ * bump_profile(t);
}

double Mollifier::operator()(const Vec& x) const {
  double t = x.norm() / eps_;
  return profile(t) * std::pow(eps_, -dim_);
}

double Mollifier::sup() const {
  return profile(0.0) * std::pow(eps_, -dim_);
}

double mollify(const std::function<double(const Vec&)>& u, const Mollifier& m,
               const Vec& x) {
  double eps = m.epsilon();
  if (m.dim() == 1) {
    auto f = [&](double y) { return u(Vec(y)) * m(Vec(x[0] - y)); };
    double s = 0;
    const int panels = 32;
    double h = 2 * eps / panels;
    for (int i = 0; i < panels; ++i)
      s += quad::gauss_panel(f, x[0] - eps + i * h, x[0] - eps + (i + 1) * h,
                             8);
    return s;
  }
  auto f = [&](double y0, double y1) {
    Vec y(y0, y1);
    return u(y) * m(x - y);
  };
  return quad::box2d(f, x[0] - eps, x[0] + eps, x[1] - eps, x[1] + eps,
                     1e-10 * m.sup() * eps * eps, 10, 6);
}

std::vector<ConvolvedDistanceRow> convolved_distance_bound(
    const Exhaustion& ex, double s, const std::vector<double>& eps_ladder) {
  std::vector<ConvolvedDistanceRow> rows;
  const Domain& omega = ex.parent();
  for (double eps : eps_ladder) {
    Domain sub = ex.at(eps);
    Mollifier m(omega.dim(), eps);
    double band = (1.0 + ex.lambda()) * eps;

    // Dense sample of the band with spacing ~ eps/20.
    std::vector<Vec> pts;
    if (omega.dim() == 1) {
      double a = omega.kind() == Domain::Kind::Interval
                     ? omega.interval_a()
                     : omega.ball_center()[0] - omega.ball_radius();
      double b = omega.kind() == Domain::Kind::Interval
                     ? omega.interval_b()
                     : omega.ball_center()[0] + omega.ball_radius();
      for (double t = eps / 40; t < band; t += eps / 20) {
        pts.push_back(Vec(a + t));
        pts.push_back(Vec(b - t));
      }
    } else {
      int nb = std::clamp<int>(
          int(2 * M_PI * omega.bounding_ball().radius / eps), 64, 256);
      // the field is rotation invariant around a ball
      if (omega.kind() == Domain::Kind::Ball) nb = 4;
      Vec c = omega.bounding_ball().center;
      for (const Vec& p : omega.boundary_sample(nb)) {
        Vec inward = (c - p).normalized();
        for (double t = eps / 40; t < band; t += eps / 20) {
          Vec x = p + inward * t;
          if (omega.contains(x) && omega.distance_to_boundary(x) < band)
            pts.push_back(x);
        }
      }
    }

    double sup = 0;
    for (const Vec& x : pts) {
      double val;
      if (omega.dim() == 1) {
        auto f = [&](double y) {
          return std::pow(sub.distance_to_boundary(Vec(y)), -s) *
                 m(Vec(x[0] - y));
        };
        std::vector<double> cuts;
        if (sub.kind() == Domain::Kind::Interval) {
          cuts = {sub.interval_a(), sub.interval_b()};
        } else {
          cuts = {sub.ball_center()[0] - sub.ball_radius(),
                  sub.ball_center()[0] + sub.ball_radius()};
        }
        val = quad::over_breakpoints(f, x[0] - eps, x[0] + eps, cuts, 8, 40);
      } else if (sub.kind() == Domain::Kind::Ball) {
        // polar around the center: the dist^{-s} line singularity becomes a
        // one-dimensional algebraic cut at rho = R_eps
        Vec c = sub.ball_center();
        double Re = sub.ball_radius();
        double rx = (x - c).norm();
        auto fr = [&](double rho) {
          if (!(rho > 0)) return 0.0;
          double cosw =
              (rho * rho + rx * rx - eps * eps) / (2.0 * rho * rx);
          if (cosw >= 1.0) return 0.0;
          double phim = std::acos(std::max(cosw, -1.0));
          auto fa = [&](double phi) {
            double d2 =
                rho * rho + rx * rx - 2.0 * rho * rx * std::cos(phi);
            return m(Vec(std::sqrt(std::max(d2, 0.0)), 0.0));
          };
          double ang = quad::gauss_panel(fa, -phim, phim, 16);
          return rho * std::pow(std::abs(Re - rho), -s) * ang;
        };
        val = quad::over_breakpoints(fr, std::max(0.0, rx - eps), rx + eps,
                                     {Re}, 8, 30);
      } else {
        auto f = [&](double y0, double y1) {
          Vec y(y0, y1);
          return std::pow(sub.distance_to_boundary(y), -s) * m(x - y);
        };
        val = quad::box2d(f, x[0] - eps, x[0] + eps, x[1] - eps, x[1] + eps,
                          1e-8 * m.sup() * std::pow(eps, 2 - s), 12, 4);
      }
      sup = std::max(sup, val);
    }
    rows.push_back({eps, sup, sup * std::pow(eps, s)});
  }
  return rows;
}

}  // namespace stableop
