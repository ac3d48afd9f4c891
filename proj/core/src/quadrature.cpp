#include "stableop/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace stableop::quad {

namespace {

GaussRule compute_rule(int n) {
  // Newton iteration on Legendre polynomials.
  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  return r;
}

}  // namespace

const GaussRule& gauss_rule(int order) {
  static std::map<int, GaussRule> cache;
  static std::mutex m;
  std::lock_guard<std::mutex> lock(m);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, compute_rule(order)).first;
  return it->second;
}

double gauss_panel(const Fn1D& f, double a, double b, int order) {
  const GaussRule& g = gauss_rule(order);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0;
  for (size_t i = 0; i < g.nodes.size(); ++i) {
    double v = f(mid + half * g.nodes[i]);
    if (std::isfinite(v)) s += g.weights[i] * v;
  }
  return s * half;
}

namespace {

// Graded sweep from the singular endpoint `a` toward `b` over length `len`.
// Panels [a + len*2^{-k-1}, a + len*2^{-k}], k = 0..levels-1, plus a
// geometric-series estimate of the remaining sliver.
double graded_from(const Fn1D& f, double a, double sign, double len, int order,
                   int levels) {
  double total = 0, prev = 0, last = 0;
  double hi = len;
  for (int k = 0; k < levels; ++k) {
    double lo = hi * 0.5;
    double x0 = a + sign * lo, x1 = a + sign * hi;
    double piece = sign > 0 ? gauss_panel(f, x0, x1, order)
                            : gauss_panel(f, x1, x0, order);
    total += piece;
    prev = last;
    last = piece;
    hi = lo;
  }
  // Extrapolate the unintegrated sliver [a, a+sign*hi] assuming geometric
  // decay of the dyadic contributions (holds for algebraic singularities).
  if (prev != 0.0 && last != 0.0) {
    double rho = last / prev;
    if (rho > 0 && rho < 0.95) total += last * rho / (1.0 - rho);
  }
  return total;
}

}  // namespace

double graded(const Fn1D& f, double a, double b, bool singular_a,
              bool singular_b, int order, int levels) {
  if (!(b > a)) return 0.0;
  if (!singular_a && !singular_b) {
    // Still use a short composite to be safe for mildly varying integrands.
    const int nsub = 4;
    double s = 0, h = (b - a) / nsub;
    for (int i = 0; i < nsub; ++i)
      s += gauss_panel(f, a + i * h, a + (i + 1) * h, order);
    return s;
  }
  if (singular_a && singular_b) {
    double mid = 0.5 * (a + b);
    return graded_from(f, a, +1.0, mid - a, order, levels) +
           graded_from(f, b, -1.0, b - mid, order, levels);
  }
  if (singular_a) return graded_from(f, a, +1.0, b - a, order, levels);
  return graded_from(f, b, -1.0, b - a, order, levels);
}

double over_breakpoints(const Fn1D& f, double a, double b,
                        std::vector<double> pts, int order, int levels) {
  pts.push_back(a);
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  std::vector<double> cuts;
  for (double p : pts) {
    if (p < a || p > b) continue;
    if (cuts.empty() || p - cuts.back() > 1e-14 * (1.0 + std::abs(p)))
      cuts.push_back(p);
  }
  if (cuts.size() < 2) return 0.0;
  double s = 0;
  for (size_t i = 0; i + 1 < cuts.size(); ++i)
    s += graded(f, cuts[i], cuts[i + 1], true, true, order, levels);
  return s;
}

namespace {

double tensor_gauss(const std::function<double(double, double)>& f, double ax,
                    double bx, double ay, double by, int order) {
  const GaussRule& g = gauss_rule(order);
  double mx = 0.5 * (ax + bx), hx = 0.5 * (bx - ax);
  double my = 0.5 * (ay + by), hy = 0.5 * (by - ay);
  double s = 0;
  for (size_t i = 0; i < g.nodes.size(); ++i)
    for (size_t j = 0; j < g.nodes.size(); ++j) {
      double v = f(mx + hx * g.nodes[i], my + hy * g.nodes[j]);
      if (std::isfinite(v)) s += g.weights[i] * g.weights[j] * v;
    }
  return s * hx * hy;
}

double box2d_rec(const std::function<double(double, double)>& f, double ax,
                 double bx, double ay, double by, double abs_tol, int depth,
                 int max_depth, int order) {
  double coarse = tensor_gauss(f, ax, bx, ay, by, order);
  double mx = 0.5 * (ax + bx), my = 0.5 * (ay + by);
  double fine = tensor_gauss(f, ax, mx, ay, my, order) +
                tensor_gauss(f, mx, bx, ay, my, order) +
                tensor_gauss(f, ax, mx, my, by, order) +
                tensor_gauss(f, mx, bx, my, by, order);
  if (std::abs(fine - coarse) < abs_tol || depth >= max_depth) return fine;
  double t = abs_tol * 0.5;
  return box2d_rec(f, ax, mx, ay, my, t, depth + 1, max_depth, order) +
         box2d_rec(f, mx, bx, ay, my, t, depth + 1, max_depth, order) +
         box2d_rec(f, ax, mx, my, by, t, depth + 1, max_depth, order) +
         box2d_rec(f, mx, bx, my, by, t, depth + 1, max_depth, order);
}

}  // namespace

double box2d(const std::function<double(double, double)>& f, double ax,
             double bx, double ay, double by, double abs_tol, int max_depth,
             int order) {
  return box2d_rec(f, ax, bx, ay, by, abs_tol, 0, max_depth, order);
}

}  // namespace stableop::quad
