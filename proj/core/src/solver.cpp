#include "stableop/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "stableop/quadrature.hpp"
#include "stableop/spectral.hpp"

namespace stableop {

namespace {

// Antiderivatives of |r|^{-1-2s} and r|r|^{-1-2s}.
double A0(double r, double s) {
  double sg = r > 0 ? 1.0 : -1.0;
  return -sg * std::pow(std::abs(r), -2.0 * s) / (2.0 * s);
}
double A1(double r, double s) {
  if (r == 0.0) return s < 0.5 ? 0.0 : -std::numeric_limits<double>::infinity();
  if (s == 0.5) return std::log(std::abs(r));
  return std::pow(std::abs(r), 1.0 - 2.0 * s) / (1.0 - 2.0 * s);
}

double hat_value(const Mesh1D& m, int j, double x) {
  double tL = m.nodes[j - 1], tM = m.nodes[j], tR = m.nodes[j + 1];
  if (x <= tL || x >= tR) return 0.0;
  return x <= tM ? (x - tL) / (tM - tL) : (tR - x) / (tR - tM);
}

}  // namespace

Mesh1D Mesh1D::uniform(double a, double b, int n_cells) {
  if (!(b > a) || n_cells < 2) throw std::invalid_argument("bad mesh request");
  Mesh1D m;
  m.a = a;
  m.b = b;
  m.nodes.resize(n_cells + 1);
  for (int i = 0; i <= n_cells; ++i)
    m.nodes[i] = a + (b - a) * i / n_cells;
  return m;
}

Mesh1D Mesh1D::graded(double a, double b, int n_cells, double grade) {
  if (!(b > a) || n_cells < 2 || !(grade >= 1))
    throw std::invalid_argument("bad mesh request");
  Mesh1D m;
  m.a = a;
  m.b = b;
  m.nodes.resize(n_cells + 1);
  for (int i = 0; i <= n_cells; ++i) {
    double t = static_cast<double>(i) / n_cells;
    double num = std::pow(t, grade);
    double w = num / (num + std::pow(1.0 - t, grade));
    m.nodes[i] = a + (b - a) * w;
  }
  m.nodes.front() = a;
  m.nodes.back() = b;
  return m;
}

Mesh1D Mesh1D::refined() const {
  Mesh1D m;
  m.a = a;
  m.b = b;
  m.nodes.reserve(2 * nodes.size() - 1);
  for (size_t i = 0; i + 1 < nodes.size(); ++i) {
    m.nodes.push_back(nodes[i]);
    m.nodes.push_back(0.5 * (nodes[i] + nodes[i + 1]));
  }
  m.nodes.push_back(nodes.back());
  return m;
}

double hat_operator_value(const Mesh1D& mesh, int j, double s, double x) {
  double tL = mesh.nodes[j - 1], tM = mesh.nodes[j], tR = mesh.nodes[j + 1];
  double phx = hat_value(mesh, j, x);
  double total = 0.0;

  // region where the hat vanishes: y < tL and y > tR
  if (phx != 0.0) total += phx * (A0(tL - x, s) - A0(tR - x, s));

  struct Seg {
    double p, q, beta, lin;
  };
  Seg segs[2] = {
      {tL, tM, 1.0 / (tM - tL), (x - tL) / (tM - tL)},
      {tM, tR, -1.0 / (tR - tM), (tR - x) / (tR - tM)},
  };
  for (const Seg& sg : segs) {
    double r1 = sg.p - x, r2 = sg.q - x;
    double c = phx - sg.lin;
    // c vanishes identically on the segment containing x, which is the only
    // case where [r1, r2] straddles the kernel singularity
    if (c != 0.0) total += c * (A0(r2, s) - A0(r1, s));
    total -= sg.beta * (A1(r2, s) - A1(r1, s));
  }
  return total;
}

GalerkinSystem assemble(const StableOperator& op, const Mesh1D& mesh,
                        const std::function<double(double)>& f) {
  if (op.mu.dim() != 1)
    throw std::invalid_argument("solver requires a 1D spectral measure");
  const double s = op.s;
  const double mass = op.mu.total_mass();
  const int n = mesh.cells();
  const int N = n - 1;
  if (N < 1) throw std::invalid_argument("mesh too coarse");

  GalerkinSystem sys;
  sys.A = Eigen::MatrixXd::Zero(N, N);
  sys.b = Eigen::VectorXd::Zero(N);

  for (int i = 1; i <= N; ++i) {
    double lo = mesh.nodes[i - 1], hi = mesh.nodes[i + 1];
    for (int j = 1; j <= N; ++j) {
      auto integrand = [&](double x) {
        return hat_value(mesh, i, x) * hat_operator_value(mesh, j, s, x);
      };
      // the integrand is singular only at mesh nodes near diag(j)
      int levels = std::abs(i - j) <= 3 ? 36 : 12;
      sys.A(i - 1, j - 1) = mass * quad::over_breakpoints(
                                       integrand, lo, hi, {mesh.nodes[i]}, 8,
                                       levels);
    }
    auto load = [&](double x) { return hat_value(mesh, i, x) * f(x); };
    sys.b(i - 1) =
        quad::over_breakpoints(load, lo, hi, {mesh.nodes[i]}, 8, 12);
  }
  sys.A = 0.5 * (sys.A + sys.A.transpose()).eval();
  return sys;
}

double DirichletSolution::eval(double x) const {
  const auto& t = mesh.nodes;
  if (x <= t.front() || x >= t.back()) return 0.0;
  size_t j = std::upper_bound(t.begin(), t.end(), x) - t.begin() - 1;
  j = std::min(j, t.size() - 2);
  double w = (x - t[j]) / (t[j + 1] - t[j]);
  return values[j] * (1 - w) + values[j + 1] * w;
}

SampledFunction DirichletSolution::as_function() const {
  SampledFunction u =
      SampledFunction::grid1d(mesh.nodes, values, Interp::Linear,
                              Smoothness::C0);
  u.with_support(Domain::interval(mesh.a, mesh.b));
  return u;
}

DirichletSolution solve_dirichlet(const StableOperator& op, const Mesh1D& mesh,
                                  const std::function<double(double)>& f) {
  GalerkinSystem sys = assemble(op, mesh, f);
  Eigen::LDLT<Eigen::MatrixXd> ldlt(sys.A);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
    throw ToleranceError("stiffness matrix is not positive definite");
  Eigen::VectorXd c = ldlt.solve(sys.b);

  DirichletSolution sol;
  sol.mesh = mesh;
  sol.values.assign(mesh.nodes.size(), 0.0);
  for (int k = 0; k < c.size(); ++k) sol.values[k + 1] = c(k);
  sol.galerkin_residual = (sys.A * c - sys.b).lpNorm<Eigen::Infinity>();
  sol.energy_value = c.dot(sys.A * c);
  return sol;
}

DecayFit boundary_decay_fit(const DirichletSolution& sol, double dmin,
                            double dmax) {
  std::vector<double> lx, ly;
  const auto& t = sol.mesh.nodes;
  for (size_t k = 1; k + 1 < t.size(); ++k) {
    double d = std::min(t[k] - sol.mesh.a, sol.mesh.b - t[k]);
    double v = sol.values[k];
    if (d >= dmin && d <= dmax && v > 0) {
      lx.push_back(std::log(d));
      ly.push_back(std::log(v));
    }
  }
  if (lx.size() < 5)
    throw ToleranceError("too few nodes in the decay-fit window");
  double n = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t k = 0; k < lx.size(); ++k) {
    sx += lx[k];
    sy += ly[k];
    sxx += lx[k] * lx[k];
    sxy += lx[k] * ly[k];
  }
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  double intercept = (sy - slope * sx) / n;
  return {slope, std::exp(intercept), static_cast<int>(lx.size())};
}

double holder_seminorm(const std::function<double(double)>& f, double a,
                       double b, double alpha, int n_samples) {
  std::vector<double> xs(n_samples), ys(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    xs[i] = a + (b - a) * i / (n_samples - 1);
    ys[i] = f(xs[i]);
  }
  double semi = 0.0;
  for (int i = 0; i < n_samples; ++i)
    for (int j = i + 1; j < n_samples; ++j)
      semi = std::max(semi, std::abs(ys[i] - ys[j]) /
                                std::pow(xs[j] - xs[i], alpha));
  return semi;
}

}  // namespace stableop
