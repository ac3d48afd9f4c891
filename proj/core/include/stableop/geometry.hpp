#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "stableop/vec.hpp"

namespace stableop {

struct BoundingBall {
  Vec center;
  double radius;
};

/// Bounded convex domain: interval (d=1), ball, convex polygon (d=2), or a
/// rounded convex polygon (polygon with circular corner fillets; produced by
/// the exhaustion machinery).
class Domain {
 public:
  enum class Kind { Interval, Ball, Polygon, RoundedPolygon };

  static Domain interval(double a, double b);
  static Domain ball(Vec center, double radius);
  /// Vertices counterclockwise; must form a simple convex polygon.
  static Domain polygon(std::vector<Vec> vertices);
  /// Minkowski sum of a convex polygon with a closed ball of radius rho.
  static Domain rounded_polygon(std::vector<Vec> vertices, double rho);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }

  bool contains(const Vec& x) const { return signed_distance(x) < 0; }
  /// Negative inside, positive outside, zero on the boundary.
  double signed_distance(const Vec& x) const;
  /// Unsigned distance to the boundary.
  double distance_to_boundary(const Vec& x) const {
    return std::abs(signed_distance(x));
  }

  /// The set {r : x + r*theta in Omega} (a single interval by convexity), or
  /// nullopt when the line misses the closure.
  std::optional<std::pair<double, double>> chord(const Vec& x,
                                                 const Vec& theta) const;

  Domain translated(const Vec& h) const;

  BoundingBall bounding_ball() const;
  /// `n` points distributed over the boundary (deterministic layout).
  std::vector<Vec> boundary_sample(int n) const;

  double volume() const;

  // Metadata required by the maximum-principle hypotheses.
  double exterior_ball_radius = std::numeric_limits<double>::infinity();
  double lipschitz_constant = 0.0;

  // Variant payload accessors (throw on kind mismatch).
  double interval_a() const;
  double interval_b() const;
  Vec ball_center() const;
  double ball_radius() const;
  const std::vector<Vec>& vertices() const;
  double fillet_radius() const;

 private:
  Kind kind_ = Kind::Interval;
  int dim_ = 1;
  double a_ = 0, b_ = 1;      // interval
  Vec center_;                // ball
  double radius_ = 1;         // ball / fillet
  std::vector<Vec> verts_;    // polygon core
};

enum class CollarKind { Thinned, Thickened, BoundaryBand };

/// Thinned Omega_eps, thickened Omega^eps, or the interior band
/// {x in Omega : dist(x, boundary) < eps}.
struct Collar {
  const Domain* parent;
  double epsilon;
  CollarKind kind;

  bool contains(const Vec& x) const;
};

/// Family eps -> D_eps of smooth subdomains shrinking onto the parent.
/// Interval/ball: concentric offset. Polygon: inward offset with circular
/// corner fillets of radius eps (C^{1,1}, uniform exterior ball radius).
class Exhaustion {
 public:
  explicit Exhaustion(const Domain& parent);

  double lambda() const { return lambda_; }
  double eps0() const { return eps0_; }
  const Domain& parent() const { return *parent_; }

  Domain at(double eps) const;

 private:
  const Domain* parent_;
  double lambda_ = 1.5;
  double eps0_ = 0;
};

/// Radial bump exp(-1/(1-|x|^2)) on |x|<1, scaled to B_eps and normalized to
/// unit mass. The normalization constant is computed numerically per
/// dimension and cached.
class Mollifier {
 public:
  Mollifier(int dim, double eps);

  double epsilon() const { return eps_; }
  int dim() const { return dim_; }

  /// eta_eps(x) = eps^{-d} eta(x/eps).
  double operator()(const Vec& x) const;
  /// Value of the unit-scale profile at radius t in [0,1).
  double profile(double t) const;
  double sup() const;  // max of eta_eps (attained at 0)

  static double normalization(int dim);

 private:
  int dim_;
  double eps_;
  double norm_const_;
};

/// (u * eta_eps)(x) by quadrature over B_eps(x).
double mollify(const std::function<double(const Vec&)>& u, const Mollifier& m,
               const Vec& x);

struct ConvolvedDistanceRow {
  double eps;
  double sup_value;         // sup over band of (dist(.,bd D_eps)^{-s} * eta_eps)
  double normalized;        // sup_value * eps^s
};

/// Per-eps suprema of the eps^s-normalized convolved inverse distance over
/// the boundary band dist(x, bd Omega) < (1+lambda) eps. Band sampled with
/// spacing ~ eps/20.
std::vector<ConvolvedDistanceRow> convolved_distance_bound(
    const Exhaustion& ex, double s, const std::vector<double>& eps_ladder);

}  // namespace stableop
