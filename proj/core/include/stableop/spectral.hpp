#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "stableop/geometry.hpp"
#include "stableop/vec.hpp"

namespace stableop {

struct InvalidMeasureError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ToleranceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DivergentNormError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SphereAtom {
  Vec direction;  // unit vector
  double weight;  // > 0
};

/// Finite nonnegative measure mu on the unit sphere S^{d-1}: uniform with a
/// given total mass, a list of atoms, or a density against surface measure.
class SpectralMeasure {
 public:
  static SpectralMeasure uniform(int dim, double total_mass);
  static SpectralMeasure atomic(int dim, std::vector<SphereAtom> atoms);
  /// Density evaluated on the sphere; integrated with an n_nodes-point
  /// trapezoid rule in d=2 (product Gauss x trapezoid in d=3).
  static SpectralMeasure density(int dim,
                                 std::function<double(const Vec&)> rho,
                                 int n_nodes = 128);

  enum class Kind { Uniform, Atomic, Density };
  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  double total_mass() const;

  /// Discretization of mu as weighted directions, suitable for evaluating
  /// sphere integrals. Atoms are returned exactly; uniform/density measures
  /// are returned as a quadrature rule. In d=1 the sphere is {-1,+1}.
  std::vector<SphereAtom> directions() const;
  /// Same, with at least `min_nodes` quadrature directions for continuous mu.
  std::vector<SphereAtom> directions(int min_nodes) const;

  const std::vector<SphereAtom>& atoms() const { return atoms_; }

 private:
  Kind kind_ = Kind::Uniform;
  int dim_ = 1;
  double mass_ = 1.0;
  std::vector<SphereAtom> atoms_;
  std::function<double(const Vec&)> rho_;
  int n_nodes_ = 128;
};

/// Jump measure |r|^{-1-2s} dr x mu(dtheta) in polar coordinates.
struct LevyMeasure {
  SpectralMeasure spectral;
  double s;  // stability index in (0,1)

  LevyMeasure(SpectralMeasure mu, double s_) : spectral(std::move(mu)), s(s_) {
    if (!(s > 0 && s < 1)) throw std::invalid_argument("s must be in (0,1)");
  }

  /// nu(box) by direct quadrature, for symmetry tests. Box given as
  /// [lo, hi] per coordinate; the origin must not be interior to the box.
  double measure_of_box(const Vec& lo, const Vec& hi) const;
};

/// Domain-dependent decay weight nu*(x); the natural integrability weight
/// for distributional pairings with the operator.
class TailWeight {
 public:
  TailWeight(LevyMeasure levy, const Domain& domain)
      : levy_(std::move(levy)), domain_(&domain) {}

  const LevyMeasure& levy() const { return levy_; }
  const Domain& domain() const { return *domain_; }

  /// nu*(x) = int int 1_Omega(x + r theta) (1+|r|)^{-1-2s} mu(dtheta) dr.
  /// Chords are computed geometrically and the radial factor integrated in
  /// closed form; continuous mu uses angular quadrature with window
  /// narrowing for far-away x.
  double operator()(const Vec& x) const;

 private:
  double chord_integral(const Vec& x, const Vec& theta) const;
  LevyMeasure levy_;
  const Domain* domain_;
};

/// Lower bound (grid + 3 refinement rounds) of
/// inf_omega int |omega . theta|^{2s} mu(dtheta).
/// A value ~ 0 flags mu concentrated on a hyperplane.
double nondegeneracy_constant(const SpectralMeasure& mu, double s,
                              int grid_resolution = 256);

struct ScalingIdentityResult {
  double lhs;  // quadrature of int (t ^ |z|)^2 nu(dz)
  double rhs;  // mu(S^{d-1}) t^{2-2s} (1/(1-s) + 1/s)
  double relative_gap;
};

/// Exact scaling identity of the Levy measure, evaluated both ways.
ScalingIdentityResult levy_scaling_identity(const LevyMeasure& levy, double t);

struct TailNormResult {
  double value;
  double truncation_radius;
  double tail_estimate;  // contribution bound of the last doubling shell
};

/// int |u| nu* dx over an adaptively grown box (doubled until the last shell
/// contributes < 1e-6 of the running total). Throws DivergentNormError when
/// the value keeps growing under refinement.
TailNormResult tail_norm(const std::function<double(const Vec&)>& u,
                         const TailWeight& tw, double initial_radius = 2.0,
                         double shell_tol = 1e-6);

}  // namespace stableop
