#include "stableop/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stableop/quadrature.hpp"
#include "stableop/spectral.hpp"

namespace stableop {

namespace {

double interval_lo(const Domain& d) {
  auto bb = d.bounding_ball();
  return bb.center[0] - bb.radius;
}
double interval_hi(const Domain& d) {
  auto bb = d.bounding_ball();
  return bb.center[0] + bb.radius;
}

double scale_of(const SampledFunction& u, const Domain& omega, int grid) {
  double sup = 0.0;
  auto bb = omega.bounding_ball();
  if (omega.dim() == 1) {
    double a = bb.center[0] - bb.radius, b = bb.center[0] + bb.radius;
    for (int i = 0; i < grid; ++i) {
      double t = a + (i + 0.5) * (b - a) / grid;
      sup = std::max(sup, std::abs(u(Vec(t))));
    }
  } else {
    int m = static_cast<int>(std::sqrt(static_cast<double>(grid))) + 1;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        Vec x(bb.center[0] - bb.radius + (i + 0.5) * 2 * bb.radius / m,
              bb.center[1] - bb.radius + (j + 0.5) * 2 * bb.radius / m);
        if (omega.contains(x)) sup = std::max(sup, std::abs(u(x)));
      }
  }
  return std::max(sup, 1e-12);
}

double band_positive_integral(const SampledFunction& u, const Domain& omega,
                              double eps) {
  if (omega.dim() == 1) {
    double a = interval_lo(omega), b = interval_hi(omega);
    double m = 0.5 * (a + b);
    auto f = [&](double t) { return std::max(0.0, u(Vec(t))); };
    double v = 0.0;
    v += quad::graded(f, a, std::min(a + eps, m), true, false, 8, 44);
    v += quad::graded(f, std::max(b - eps, m), b, false, true, 8, 44);
    return v;
  }
  if (omega.kind() == Domain::Kind::Ball) {
    // polar integration over the thin ring: robust for small eps
    Vec c = omega.ball_center();
    double R = omega.ball_radius();
    double r0 = std::max(0.0, R - eps);
    auto radial = [&](double r) {
      const int n = 256;
      double sum = 0.0;
      for (int k = 0; k < n; ++k) {
        double th = 2.0 * M_PI * (k + 0.5) / n;
        sum += std::max(
            0.0, u(Vec(c[0] + r * std::cos(th), c[1] + r * std::sin(th))));
      }
      return r * sum * (2.0 * M_PI / n);
    };
    return quad::graded(radial, r0, R, false, true, 8, 40);
  }
  auto bb = omega.bounding_ball();
  auto f = [&](double x, double y) {
    Vec p(x, y);
    if (!omega.contains(p) || omega.distance_to_boundary(p) >= eps)
      return 0.0;
    return std::max(0.0, u(p));
  };
  return quad::box2d(f, bb.center[0] - bb.radius, bb.center[0] + bb.radius,
                     bb.center[1] - bb.radius, bb.center[1] + bb.radius,
                     1e-9, 14);
}

double sphere_average(const SampledFunction& u, const Vec& c, double r) {
  if (c.dim() == 1) return 0.5 * (u(Vec(c[0] - r)) + u(Vec(c[0] + r)));
  const int n = 64;
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    double th = 2.0 * M_PI * k / n;
    sum += u(Vec(c[0] + r * std::cos(th), c[1] + r * std::sin(th)));
  }
  return sum / n;
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    default: return "inconclusive";
  }
}

std::vector<SampledFunction> default_bump_family(const Domain& omega,
                                                 int n_centers, int n_widths) {
  if (omega.dim() != 1)
    throw std::invalid_argument("default bump family is 1D");
  double a = interval_lo(omega), b = interval_hi(omega);
  std::vector<SampledFunction> fam;
  for (int k = 1; k <= n_centers; ++k) {
    double c = a + k * (b - a) / (n_centers + 1);
    double wmax = 0.9 * std::min(c - a, b - c);
    for (int m = 1; m <= n_widths; ++m) {
      double w = wmax * m / n_widths;
      fam.push_back(bump_function(Vec(c), w, 1.0));
    }
  }
  return fam;
}

UltraResult check_ultrasubharmonic(const StableOperator& op,
                                   const SampledFunction& u,
                                   const Domain& omega,
                                   const std::vector<SampledFunction>& family,
                                   double abs_tol) {
  if (family.empty()) throw std::invalid_argument("empty test family");
  double su = scale_of(u, omega, 201);
  UltraResult res;
  res.test_function_count = static_cast<int>(family.size());
  res.max_pairing_value = -std::numeric_limits<double>::infinity();
  bool all_pass = true;
  for (const SampledFunction& eta : family) {
    auto bb = eta.support()->bounding_ball();
    double sa = 0.0;
    for (double f : {-0.5, 0.0, 0.5})
      sa = std::max(sa, std::abs(apply_pointwise(
                            op, eta, Vec(bb.center[0] + f * bb.radius))));
    PairingResult pr = pairing(op, u, eta, omega);
    double thr = abs_tol * su * std::max(sa, 1e-12) +
                 2.0 * pr.exterior_tail_bound;
    res.max_pairing_value = std::max(res.max_pairing_value, pr.value);
    res.threshold = std::max(res.threshold, thr);
    if (pr.value > thr) all_pass = false;
  }
  res.verdict = all_pass ? Verdict::Pass : Verdict::Fail;
  return res;
}

UltraResult check_positive_part(const StableOperator& op,
                                const SampledFunction& u, const Domain& omega,
                                const std::vector<SampledFunction>& family,
                                double abs_tol) {
  return check_ultrasubharmonic(op, u.positive_part(), omega, family, abs_tol);
}

std::vector<LadderRow> boundary_functional(const SampledFunction& u,
                                           const Domain& omega, double s,
                                           const std::vector<double>& ladder,
                                           double delta) {
  std::vector<LadderRow> rows;
  for (double eps : ladder) {
    double band = band_positive_integral(u, omega, eps);
    rows.push_back({eps, std::pow(eps, -s + delta) * band});
  }
  return rows;
}

Verdict ladder_verdict(const std::vector<LadderRow>& rows, double scale) {
  if (rows.empty()) return Verdict::Inconclusive;
  double first = rows.front().value, last = rows.back().value;
  for (const auto& r : rows)
    if (!std::isfinite(r.value)) return Verdict::Fail;
  if (last <= std::max(0.1 * first, 1e-9 * scale)) return Verdict::Pass;
  return Verdict::Fail;
}

HypothesisReport verify_max_principle(const StableOperator& op,
                                      const SampledFunction& u,
                                      const Domain& omega,
                                      const VerifierConfig& cfg) {
  if (omega.dim() != 1)
    throw std::invalid_argument("verifier implemented for d = 1");
  HypothesisReport rep;
  double su = scale_of(u, omega, cfg.interior_grid);

  auto family = default_bump_family(omega, cfg.n_centers, cfg.n_widths);
  rep.ultrasubharmonic =
      check_ultrasubharmonic(op, u, omega, family, cfg.abs_tol);

  // (1.6): u <= 0 outside omega, sampled geometrically away from the boundary
  double a = interval_lo(omega), b = interval_hi(omega);
  double d0 = 1e-3 * (b - a), T = cfg.exterior_extent;
  rep.max_exterior_value = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < cfg.exterior_samples; ++k) {
    double t = d0 * std::pow(T / d0, static_cast<double>(k) /
                                         (cfg.exterior_samples - 1));
    for (double x : {a - t, b + t}) {
      rep.max_exterior_value = std::max(rep.max_exterior_value, u(Vec(x)));
      ++rep.exterior_sample_count;
    }
  }
  rep.exterior_sign = rep.max_exterior_value <= cfg.abs_tol * su
                          ? Verdict::Pass
                          : Verdict::Fail;

  rep.boundary_ladder =
      boundary_functional(u, omega, op.s, cfg.eps_ladder, 0.0);
  rep.boundary_limit = ladder_verdict(rep.boundary_ladder, su);

  rep.interior_grid_count = cfg.interior_grid;
  rep.sup_positive_part = 0.0;
  for (int i = 0; i < cfg.interior_grid; ++i) {
    double t = a + (i + 0.5) * (b - a) / cfg.interior_grid;
    rep.sup_positive_part =
        std::max(rep.sup_positive_part, std::max(0.0, u(Vec(t))));
  }
  rep.conclusion_tol = cfg.abs_tol * su;
  rep.conclusion = rep.sup_positive_part <= rep.conclusion_tol
                       ? Verdict::Pass
                       : Verdict::Fail;
  rep.internal_inconsistency =
      rep.hypotheses_pass() && rep.conclusion == Verdict::Fail;
  return rep;
}

PipelineTrace pipeline_replay(const StableOperator& op,
                              const SampledFunction& u, const Domain& omega,
                              const SampledFunction& psi,
                              const std::vector<double>& ladder,
                              int mesh_cells) {
  if (omega.dim() != 1)
    throw std::invalid_argument("pipeline replay implemented for d = 1");
  if (!psi.zero_exterior() || !psi.support())
    throw std::invalid_argument("psi must be a compactly supported bump");

  Exhaustion ex(omega);
  auto cd = convolved_distance_bound(ex, op.s, ladder);
  PipelineTrace trace;
  for (const auto& row : cd)
    trace.convolved_constant = std::max(trace.convolved_constant,
                                        row.normalized);

  double pa = interval_lo(*psi.support()), pb = interval_hi(*psi.support());
  double psi_sup = 0.0;
  for (int i = 0; i <= 100; ++i)
    psi_sup = std::max(psi_sup, psi(Vec(pa + (pb - pa) * i / 100.0)));
  if (!(psi_sup > 0)) throw std::invalid_argument("psi must be nonzero");

  double su = scale_of(u, omega, 201);
  SampledFunction up = u.positive_part();

  for (double eps : ladder) {
    Domain D = ex.at(eps);
    double da = interval_lo(D), db = interval_hi(D);
    if (!(pa > da && pb < db))
      throw std::invalid_argument("psi not supported inside the subdomain");

    Mesh1D mesh = Mesh1D::graded(da, db, mesh_cells);
    DirichletSolution sol = solve_dirichlet(
        op, mesh, [&psi](double x) { return psi(Vec(x)); });

    auto phi = [&sol](double x) { return sol.eval(x); };
    double phi_sup = 0.0;
    for (double v : sol.values) phi_sup = std::max(phi_sup, std::abs(v));
    double holder =
        (phi_sup + holder_seminorm(phi, da, db, op.s, 160)) / psi_sup;

    double band = band_positive_integral(u, omega, eps);
    double remainder = trace.convolved_constant * holder *
                       std::pow(eps, -op.s) * band;

    Mollifier moll(1, eps);
    auto v_eps = [&](const Vec& x) { return mollify([&up](const Vec& y) {
                                       return up(y);
                                     }, moll, x); };
    auto integrand = [&](double t) {
      Vec x(t);
      return v_eps(x) * psi(x);
    };
    double vpsi = quad::over_breakpoints(integrand, pa, pb, {}, 8, 18);

    trace.steps.push_back({eps, vpsi, band, holder, remainder,
                           sol.galerkin_residual});
  }

  if (!trace.steps.empty()) {
    double r0 = trace.steps.front().remainder_bound;
    double r1 = trace.steps.back().remainder_bound;
    double v1 = trace.steps.back().v_eps_psi;
    trace.remainder_vanishes = r1 <= std::max(0.1 * r0, 1e-9 * su);
    // the argument closes only when the remainder vanishes; otherwise the
    // limit must already be nonpositive on its own
    trace.limsup_nonpositive =
        v1 <= 1e-6 * su ||
        (trace.remainder_vanishes && v1 <= r1 + 1e-6 * su);
  }
  return trace;
}

HypothesisReport classical_mp_check(const SampledFunction& u,
                                    const Domain& omega,
                                    const VerifierConfig& cfg) {
  HypothesisReport rep;
  double su = scale_of(u, omega, cfg.interior_grid);
  auto bb = omega.bounding_ball();

  // (a) sub-mean-value on sampled balls
  std::vector<Vec> centers;
  if (omega.dim() == 1) {
    double a = interval_lo(omega), b = interval_hi(omega);
    for (int i = 0; i < 21; ++i)
      centers.push_back(Vec(a + (i + 0.5) * (b - a) / 21));
  } else {
    int m = 15;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        Vec x(bb.center[0] - bb.radius + (i + 0.5) * 2 * bb.radius / m,
              bb.center[1] - bb.radius + (j + 0.5) * 2 * bb.radius / m);
        if (omega.contains(x)) centers.push_back(x);
      }
  }
  double max_viol = -std::numeric_limits<double>::infinity();
  int tested = 0;
  for (const Vec& c : centers) {
    double db = omega.distance_to_boundary(c);
    if (!(db > 1e-6 * bb.radius) || !omega.contains(c)) continue;
    for (double f : {0.25, 0.5, 0.75}) {
      double r = f * db;
      max_viol = std::max(max_viol, u(c) - sphere_average(u, c, r));
      ++tested;
    }
  }
  rep.ultrasubharmonic.test_function_count = tested;
  rep.ultrasubharmonic.max_pairing_value = max_viol;
  rep.ultrasubharmonic.threshold = std::max(1e-8 * su, 1e-12);
  rep.ultrasubharmonic.verdict = max_viol <= rep.ultrasubharmonic.threshold
                                     ? Verdict::Pass
                                     : Verdict::Fail;

  // (b) boundary functional with exponent 1
  rep.boundary_ladder = boundary_functional(u, omega, 1.0, cfg.eps_ladder, 0.0);
  rep.boundary_limit = ladder_verdict(rep.boundary_ladder, su);

  // (1.6) exterior sign on a coarse ring outside omega
  rep.max_exterior_value = -std::numeric_limits<double>::infinity();
  if (omega.dim() == 1) {
    double a = interval_lo(omega), b = interval_hi(omega);
    for (int k = 1; k <= cfg.exterior_samples; ++k) {
      double t = k * (b - a) / cfg.exterior_samples;
      for (double x : {a - t, b + t}) {
        rep.max_exterior_value = std::max(rep.max_exterior_value, u(Vec(x)));
        ++rep.exterior_sample_count;
      }
    }
  } else {
    for (int k = 0; k < 32; ++k) {
      double th = 2.0 * M_PI * (k + 0.5) / 32;
      Vec dir(std::cos(th), std::sin(th));
      for (double f : {1.1, 1.5, 2.0, 4.0}) {
        Vec x = bb.center + (f * bb.radius) * dir;
        if (omega.contains(x)) continue;
        rep.max_exterior_value = std::max(rep.max_exterior_value, u(x));
        ++rep.exterior_sample_count;
      }
    }
  }
  rep.exterior_sign = rep.max_exterior_value <= cfg.abs_tol * su
                          ? Verdict::Pass
                          : Verdict::Fail;

  // conclusion
  rep.sup_positive_part = 0.0;
  rep.interior_grid_count = 0;
  if (omega.dim() == 1) {
    double a = interval_lo(omega), b = interval_hi(omega);
    for (int i = 0; i < cfg.interior_grid; ++i) {
      double t = a + (i + 0.5) * (b - a) / cfg.interior_grid;
      rep.sup_positive_part =
          std::max(rep.sup_positive_part, std::max(0.0, u(Vec(t))));
      ++rep.interior_grid_count;
    }
  } else {
    int m = 25;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        Vec x(bb.center[0] - bb.radius + (i + 0.5) * 2 * bb.radius / m,
              bb.center[1] - bb.radius + (j + 0.5) * 2 * bb.radius / m);
        if (!omega.contains(x)) continue;
        rep.sup_positive_part =
            std::max(rep.sup_positive_part, std::max(0.0, u(x)));
        ++rep.interior_grid_count;
      }
  }
  rep.conclusion_tol = cfg.abs_tol * su;
  rep.conclusion = rep.sup_positive_part <= rep.conclusion_tol
                       ? Verdict::Pass
                       : Verdict::Fail;
  rep.internal_inconsistency =
      rep.hypotheses_pass() && rep.conclusion == Verdict::Fail;
  return rep;
}

}  // namespace stableop
