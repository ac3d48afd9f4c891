#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "stableop/sampled_function.hpp"
#include "stableop/stable_operator.hpp"

namespace stableop {

/// 1D mesh on [a,b]; nodes include both endpoints.
struct Mesh1D {
  double a = 0, b = 1;
  std::vector<double> nodes;

  static Mesh1D uniform(double a, double b, int n_cells);
  /// Nodes clustered toward both endpoints via the symmetric grading map
  /// t^g / (t^g + (1-t)^g).
  static Mesh1D graded(double a, double b, int n_cells, double grade = 2.0);

  /// Midpoint refinement (nested meshes).
  Mesh1D refined() const;
  int cells() const { return static_cast<int>(nodes.size()) - 1; }
};

/// A_s applied to the hat function of node j, evaluated in closed form per
/// mesh segment (unit spectral mass; multiply by mu(S^0)). x must not
/// coincide with a mesh node when s >= 1/2.
double hat_operator_value(const Mesh1D& mesh, int j, double s, double x);

struct GalerkinSystem {
  Eigen::MatrixXd A;  // stiffness on interior nodes, symmetrized
  Eigen::VectorXd b;
};

GalerkinSystem assemble(const StableOperator& op, const Mesh1D& mesh,
                        const std::function<double(double)>& f);

struct DirichletSolution {
  Mesh1D mesh;
  std::vector<double> values;  // nodal values, zero at the end nodes
  double galerkin_residual;    // ||A c - b||_inf of the solved system
  double energy_value;         // c^T A c

  double eval(double x) const;
  /// Piecewise-linear interpolant with zero exterior extension.
  SampledFunction as_function() const;
};

/// Galerkin solution of A_s u = f in (a,b), u = 0 outside.
DirichletSolution solve_dirichlet(const StableOperator& op, const Mesh1D& mesh,
                                  const std::function<double(double)>& f);

struct DecayFit {
  double exponent;   // slope of log u vs log dist near the boundary
  double amplitude;  // exp(intercept)
  int points_used;
};

/// Least-squares fit of the boundary decay rate using nodal values with
/// distance to the boundary in [dmin, dmax]. Throws ToleranceError when
/// fewer than 5 nodes fall in the window.
DecayFit boundary_decay_fit(const DirichletSolution& sol, double dmin = 0.005,
                            double dmax = 0.1);

/// Sampled C^alpha seminorm of a scalar function on [a,b].
double holder_seminorm(const std::function<double(double)>& f, double a,
                       double b, double alpha, int n_samples = 200);

}  // namespace stableop
