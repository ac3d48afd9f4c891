#include "stableop/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "stableop/quadrature.hpp"

namespace stableop {

namespace {

/// Antiderivative of (1 + |r|)^{-1-2s}, continuous at 0, F(0)=0.
double tail_kernel_antiderivative(double r, double s) {
  if (r >= 0) return (1.0 - std::pow(1.0 + r, -2 * s)) / (2 * s);
  return -(1.0 - std::pow(1.0 - r, -2 * s)) / (2 * s);
}

/// Antiderivative of |r|^{-1-2s} away from 0.
double power_kernel_antiderivative(double r, double s) {
  if (r > 0) return -std::pow(r, -2 * s) / (2 * s);
  return std::pow(-r, -2 * s) / (2 * s);
}

}  // namespace

SpectralMeasure SpectralMeasure::uniform(int dim, double total_mass) {
  if (!(total_mass > 0))
    throw InvalidMeasureError("uniform measure needs positive mass");
  if (dim < 1 || dim > 3) throw InvalidMeasureError("dimension must be 1..3");
  SpectralMeasure m;
  m.kind_ = Kind::Uniform;
  m.dim_ = dim;
  m.mass_ = total_mass;
  return m;
}

SpectralMeasure SpectralMeasure::atomic(int dim,
                                        std::vector<SphereAtom> atoms) {
  if (dim < 1 || dim > 3) throw InvalidMeasureError("dimension must be 1..3");
  if (atoms.empty()) throw InvalidMeasureError("atomic measure needs atoms");
  for (const auto& a : atoms) {
    if (a.direction.dim() != dim)
      throw InvalidMeasureError("atom direction dimension mismatch");
    if (std::abs(a.direction.norm() - 1.0) > 1e-12)
      throw InvalidMeasureError("atom direction is not a unit vector");
    if (!(a.weight > 0)) throw InvalidMeasureError("atom weight must be > 0");
  }
  SpectralMeasure m;
  m.kind_ = Kind::Atomic;
  m.dim_ = dim;
  m.atoms_ = std::move(atoms);
  m.mass_ = 0;
  for (const auto& a : m.atoms_) m.mass_ += a.weight;
  return m;
}

SpectralMeasure SpectralMeasure::density(int dim,
                                         std::function<double(const Vec&)> rho,
                                         int n_nodes) {
  if (dim < 1 || dim > 3) throw InvalidMeasureError("dimension must be 1..3");
  SpectralMeasure m;
  m.kind_ = Kind::Density;
  m.dim_ = dim;
  m.rho_ = std::move(rho);
  m.n_nodes_ = n_nodes;
  m.mass_ = 0;
  for (const auto& a : m.directions()) m.mass_ += a.weight;
  return m;
}

std::vector<SphereAtom> SpectralMeasure::directions() const {
  return directions(n_nodes_);
}

std::vector<SphereAtom> SpectralMeasure::directions(int min_nodes) const {
  if (kind_ == Kind::Atomic) return atoms_;
  std::vector<SphereAtom> out;
  if (dim_ == 1) {
    Vec p(1.0), mnu(-1.0);
    if (kind_ == Kind::Uniform) {
      out.push_back({p, 0.5 * mass_});
      out.push_back({mnu, 0.5 * mass_});
    } else {
      out.push_back({p, rho_(p)});
      out.push_back({mnu, rho_(mnu)});
    }
    return out;
  }
  if (dim_ == 2) {
    int n = std::max(min_nodes, 16);
    for (int k = 0; k < n; ++k) {
      double phi = 2 * M_PI * (k + 0.5) / n;
      Vec t(std::cos(phi), std::sin(phi));
      double w = kind_ == Kind::Uniform ? mass_ / n : rho_(t) * 2 * M_PI / n;
      out.push_back({t, w});
    }
    return out;
  }
  // d=3: product Gauss (polar cosine) x trapezoid (azimuth).
  int nphi = std::max(min_nodes, 16);
  int nmu = std::max(min_nodes / 2, 8);
  const auto& g = quad::gauss_rule(nmu);
  double sphere_area = 4 * M_PI;
  for (int i = 0; i < nmu; ++i) {
    double c = g.nodes[i];
    double sn = std::sqrt(std::max(0.0, 1.0 - c * c));
    for (int k = 0; k < nphi; ++k) {
      double phi = 2 * M_PI * (k + 0.5) / nphi;
      Vec t(sn * std::cos(phi), sn * std::sin(phi), c);
      double dA = g.weights[i] * (2 * M_PI / nphi);
      double w = kind_ == Kind::Uniform ? mass_ * dA / sphere_area
                                        : rho_(t) * dA;
      out.push_back({t, w});
    }
  }
  return out;
}

double SpectralMeasure::total_mass() const { return mass_; }

double LevyMeasure::measure_of_box(const Vec& lo, const Vec& hi) const {
  double total = 0;
  for (const auto& [theta, w] : spectral.directions(512)) {
    // r-range where r*theta lies in the box
    double rlo = -std::numeric_limits<double>::infinity();
    double rhi = std::numeric_limits<double>::infinity();
    bool empty = false;
    for (int i = 0; i < lo.dim(); ++i) {
      double t = theta[i];
      if (std::abs(t) < 1e-15) {
        if (lo[i] > 0 || hi[i] < 0) empty = true;
        continue;
      }
      double r0 = lo[i] / t, r1 = hi[i] / t;
      if (r0 > r1) std::swap(r0, r1);
      rlo = std::max(rlo, r0);
      rhi = std::min(rhi, r1);
    }
    if (empty || rlo >= rhi) continue;
    if (rlo < 0 && rhi > 0)
      throw std::invalid_argument("box must not contain the origin");
    total += w * (power_kernel_antiderivative(rhi, s) -
                  power_kernel_antiderivative(rlo, s));
  }
  return total;
}

double TailWeight::chord_integral(const Vec& x, const Vec& theta) const {
  auto c = domain_->chord(x, theta);
  if (!c) return 0.0;
  double s = levy_.s;
  return tail_kernel_antiderivative(c->second, s) -
         tail_kernel_antiderivative(c->first, s);
}

double TailWeight::operator()(const Vec& x) const {
  const SpectralMeasure& mu = levy_.spectral;
  const int d = mu.dim();
  if (mu.kind() == SpectralMeasure::Kind::Atomic || d == 1) {
    double v = 0;
    for (const auto& [theta, w] : mu.directions()) {
      double ci = chord_integral(x, theta);
      if (std::isfinite(ci)) v += w * ci;
    }
    return v;
  }
  if (d == 2) {
    BoundingBall bb = domain_->bounding_ball();
    double dist = (x - bb.center).norm();
    auto weight_at = [&](const Vec& t) {
      return mu.kind() == SpectralMeasure::Kind::Uniform
                 ? mu.total_mass() / (2 * M_PI)
                 : 0.0;  // density handled below via directions()
    };
    if (mu.kind() == SpectralMeasure::Kind::Uniform && dist > 1.5 * bb.radius) {
      // Far away only a narrow angular window of lines meets the domain.
      double w = std::asin(std::min(1.0, bb.radius / dist));
      Vec axis = (bb.center - x) * (1.0 / dist);
      double phi0 = std::atan2(axis[1], axis[0]);
      auto f = [&](double phi) {
        Vec t(std::cos(phi), std::sin(phi));
        return weight_at(t) * chord_integral(x, t);
      };
      // factor 2: the opposite window traces the same set of lines
      double v = 0;
      const int panels = 8;
      for (int i = 0; i < panels; ++i)
        v += quad::gauss_panel(f, phi0 - w + 2 * w * i / panels,
                               phi0 - w + 2 * w * (i + 1) / panels, 8);
      return 2 * v;
    }
    double v = 0;
    for (const auto& [theta, w] : mu.directions(256))
      v += w * chord_integral(x, theta);
    return v;
  }
  // d=3
  double v = 0;
  for (const auto& [theta, w] : mu.directions(64))
    v += w * chord_integral(x, theta);
  return v;
}

double nondegeneracy_constant(const SpectralMeasure& mu, double s,
                              int grid_resolution) {
  if (grid_resolution < 64)
    throw std::invalid_argument("grid resolution must be >= 64");
  auto dirs = mu.directions(std::max(grid_resolution, 256));
  auto objective = [&](const Vec& omega) {
    double v = 0;
    for (const auto& [theta, w] : dirs)
      v += w * std::pow(std::abs(omega.dot(theta)), 2 * s);
    return v;
  };
  const int d = mu.dim();
  if (d == 1) return objective(Vec(1.0));
  if (d == 2) {
    double best = std::numeric_limits<double>::infinity(), best_phi = 0;
    for (int k = 0; k < grid_resolution; ++k) {
      double phi = M_PI * k / grid_resolution;  // antipodal symmetry
      double v = objective(Vec(std::cos(phi), std::sin(phi)));
      if (v < best) {
        best = v;
        best_phi = phi;
      }
    }
    double h = M_PI / grid_resolution;
    for (int round = 0; round < 3; ++round) {
      h /= 4;
      double c = best_phi;
      for (int k = -8; k <= 8; ++k) {
        double phi = c + h * k / 2.0;
        double v = objective(Vec(std::cos(phi), std::sin(phi)));
        if (v < best) {
          best = v;
          best_phi = phi;
        }
      }
    }
    return best;
  }
  // d=3: lat-long grid + local refinement
  double best = std::numeric_limits<double>::infinity();
  double bphi = 0, bpsi = 0;
  int n = std::max(64, grid_resolution / 4);
  for (int i = 0; i <= n; ++i)
    for (int k = 0; k < 2 * n; ++k) {
      double psi = M_PI * i / n, phi = M_PI * k / n;
      Vec omega(std::sin(psi) * std::cos(phi), std::sin(psi) * std::sin(phi),
                std::cos(psi));
      double v = objective(omega);
      if (v < best) {
        best = v;
        bphi = phi;
        bpsi = psi;
      }
    }
  double h = M_PI / n;
  for (int round = 0; round < 3; ++round) {
    h /= 4;
    for (int i = -4; i <= 4; ++i)
      for (int k = -4; k <= 4; ++k) {
        double psi = bpsi + h * i, phi = bphi + h * k;
        Vec omega(std::sin(psi) * std::cos(phi), std::sin(psi) * std::sin(phi),
                  std::cos(psi));
        double v = objective(omega);
        if (v < best) {
          best = v;
          bphi = phi;
          bpsi = psi;
        }
      }
  }
  return best;
}

ScalingIdentityResult levy_scaling_identity(const LevyMeasure& levy,
                                            double t) {
  if (!(t > 0)) throw std::invalid_argument("t must be > 0");
  const double s = levy.s;
  const double mass = levy.spectral.total_mass();
  // Per unit sphere mass: 2 [ int_0^t r^{1-2s} dr + t^2 int_t^R r^{-1-2s} dr ]
  // with the analytic remainder beyond R.
  auto inner = [&](double r) { return std::pow(r, 1.0 - 2 * s); };
  double head = quad::graded(inner, 0.0, t, true, false, 10, 60);
  double R = 1e4 * t;
  auto outer = [&](double r) { return t * t * std::pow(r, -1.0 - 2 * s); };
  double body = 0;
  // geometric panels [t*2^k, t*2^{k+1}]
  for (double a = t; a < R; a *= 2)
    body += quad::gauss_panel(outer, a, std::min(2 * a, R), 10);
  double tail = t * t * std::pow(R, -2 * s) / (2 * s);
  double lhs = mass * 2 * (head + body + tail);
  double rhs = mass * std::pow(t, 2.0 - 2 * s) * (1.0 / (1.0 - s) + 1.0 / s);
  return {lhs, rhs, std::abs(lhs - rhs) / std::abs(rhs)};
}

namespace {

double tail_norm_over_box(const std::function<double(const Vec&)>& u,
                          const TailWeight& tw, double r_in, double r_out,
                          int depth_bump = 0) {
  const int d = tw.levy().spectral.dim();
  if (d == 1) {
    auto f = [&](double x) {
      Vec p(x);
      return std::abs(u(p)) * tw(p);
    };
    std::vector<double> cuts;
    BoundingBall bb = tw.domain().bounding_ball();
    cuts.push_back(bb.center[0] - bb.radius);
    cuts.push_back(bb.center[0] + bb.radius);
    if (r_in > 0) {
      return quad::over_breakpoints(f, -r_out, -r_in, cuts, 8, 40) +
             quad::over_breakpoints(f, r_in, r_out, cuts, 8, 40);
    }
    return quad::over_breakpoints(f, -r_out, r_out, cuts, 8, 40);
  }
  // d=2: tile the annulus/box with cells and integrate each adaptively.
  auto f = [&](double x, double y) {
    Vec p(x, y);
    return std::abs(u(p)) * tw(p);
  };
  double total = 0;
  int ncells = 8;
  double h = 2 * r_out / ncells;
  for (int i = 0; i < ncells; ++i)
    for (int j = 0; j < ncells; ++j) {
      double ax = -r_out + i * h, ay = -r_out + j * h;
      double bx = ax + h, by = ay + h;
      if (r_in > 0 && std::max(std::abs(ax), std::abs(bx)) <= r_in &&
          std::max(std::abs(ay), std::abs(by)) <= r_in)
        continue;  // inner box already accounted for
      total += quad::box2d(f, ax, bx, ay, by, 1e-7, 12 + depth_bump, 4);
    }
  return total;
}

}  // namespace

TailNormResult tail_norm(const std::function<double(const Vec&)>& u,
                         const TailWeight& tw, double initial_radius,
                         double shell_tol) {
  // Divergence probe: the interior value must be stable under refinement.
  double v0 = tail_norm_over_box(u, tw, 0.0, initial_radius, 0);
  double v1 = tail_norm_over_box(u, tw, 0.0, initial_radius, 4);
  if (std::abs(v1 - v0) > 0.2 * std::abs(v1) + 1e-12)
    throw DivergentNormError("tail norm grows under box refinement");

  double total = v1;
  double r = initial_radius;
  double shell = 0, prev = -1;
  bool resolved = false;
  for (int k = 0; k < 24; ++k) {
    prev = shell;
    shell = tail_norm_over_box(u, tw, r, 2 * r, 0);
    total += shell;
    r *= 2;
    if (shell < shell_tol * std::max(total, 1e-300)) {
      resolved = true;
      break;
    }
  }
  if (!resolved && prev > 0) {
    // shells must decay geometrically; otherwise the integral diverges at
    // infinity. A slow but clean decay gets an extrapolated remainder.
    double ratio = shell / prev;
    if (ratio >= 0.9)
      throw DivergentNormError("tail norm grows with the truncation radius");
    shell = shell * ratio / (1.0 - ratio);
    total += shell;
  }
  return {total, r, shell};
}

}  // namespace stableop
