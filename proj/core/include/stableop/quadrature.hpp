#pragma once

#include <functional>
#include <vector>

namespace stableop::quad {

using Fn1D = std::function<double(double)>;

/// Gauss-Legendre nodes/weights on [-1,1], computed once per order and cached.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_rule(int order);

/// Plain Gauss panel on [a,b]. Non-finite integrand values are treated as 0
/// (they can only occur at integrable singularities of measure zero).
double gauss_panel(const Fn1D& f, double a, double b, int order);

/// Composite integration on [a,b] with geometric grading (ratio 2) toward the
/// endpoints flagged singular. Deterministic: the panel layout depends only on
/// (a,b,order,levels,flags), never on the integrand. The unresolved sliver at
/// a singular endpoint is estimated by geometric extrapolation of the last
/// dyadic contributions.
double graded(const Fn1D& f, double a, double b, bool singular_a,
              bool singular_b, int order = 8, int levels = 48);

/// Integrate over [a,b] split at interior breakpoints; every sub-interval is
/// graded toward both of its endpoints. `pts` need not be sorted or inside
/// [a,b]; out-of-range entries are ignored.
double over_breakpoints(const Fn1D& f, double a, double b,
                        std::vector<double> pts, int order = 8,
                        int levels = 48);

/// Recursive 2D cell quadrature on [ax,bx]x[ay,by]: tensor Gauss estimate vs
/// 4-way split; recurses on disagreement. Depth-capped so integrable point or
/// line singularities terminate (their deep-cell contributions vanish).
double box2d(const std::function<double(double, double)>& f, double ax,
             double bx, double ay, double by, double abs_tol,
             int max_depth = 30, int order = 4);

}  // namespace stableop::quad
