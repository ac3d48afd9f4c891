#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "stableop/quadrature.hpp"
#include "stableop/solver.hpp"

using namespace stableop;

TEST_CASE("mesh constructors") {
  Mesh1D u = Mesh1D::uniform(-1, 1, 8);
  CHECK(u.cells() == 8);
  CHECK(u.nodes.front() == -1.0);
  CHECK(u.nodes.back() == 1.0);
  for (int i = 0; i < 8; ++i)
    CHECK(u.nodes[i + 1] - u.nodes[i] == doctest::Approx(0.25));

  Mesh1D g = Mesh1D::graded(-1, 1, 16);
  CHECK(g.cells() == 16);
  // clustered toward the endpoints, symmetric
  CHECK(g.nodes[1] - g.nodes[0] < g.nodes[8] - g.nodes[7]);
  for (int i = 0; i <= 16; ++i)
    CHECK(g.nodes[i] == doctest::Approx(-g.nodes[16 - i]).epsilon(1e-12));

  Mesh1D r = u.refined();
  CHECK(r.cells() == 16);
  for (int i = 0; i <= 8; ++i)
    CHECK(r.nodes[2 * i] == doctest::Approx(u.nodes[i]));
}

TEST_CASE("hat operator value matches direct quadrature") {
  Mesh1D mesh = Mesh1D::uniform(-1, 1, 8);
  for (double s : {0.25, 0.5, 0.75}) {
    for (double x : {0.11, -0.37, 0.62}) {
      int j = 3;
      auto hat = [&](double t) {
        double lo = mesh.nodes[j - 1], mid = mesh.nodes[j],
               hi = mesh.nodes[j + 1];
        if (t <= lo || t >= hi) return 0.0;
        return t < mid ? (t - lo) / (mid - lo) : (hi - t) / (hi - mid);
      };
      // symmetrized double-difference integral with the analytic tail
      double hx = hat(x);
      auto g = [&](double r) {
        return (2.0 * hx - hat(x - r) - hat(x + r)) *
               std::pow(r, -1.0 - 2.0 * s);
      };
      std::vector<double> cuts;
      for (double n : mesh.nodes) cuts.push_back(std::abs(n - x));
      double R = std::max(std::abs(-1.0 - x), std::abs(1.0 - x));
      double direct = quad::over_breakpoints(g, 0.0, R, cuts, 10, 40) +
                      2.0 * hx * std::pow(R, -2.0 * s) / (2.0 * s);
      double closed = hat_operator_value(mesh, j, s, x);
      CHECK(closed == doctest::Approx(direct).epsilon(1e-6));
    }
  }
}

TEST_CASE("assembled system is symmetric with positive diagonal") {
  StableOperator op(0.5, SpectralMeasure::uniform(1, 1.0));
  Mesh1D mesh = Mesh1D::uniform(-1, 1, 12);
  GalerkinSystem sys = assemble(op, mesh, [](double) { return 1.0; });
  REQUIRE(sys.A.rows() == 11);
  for (int i = 0; i < sys.A.rows(); ++i) {
    CHECK(sys.A(i, i) > 0);
    for (int j = 0; j < i; ++j)
      CHECK(sys.A(i, j) == doctest::Approx(sys.A(j, i)).epsilon(1e-12));
  }
}

TEST_CASE("dirichlet solve: residual, positivity, energy") {
  StableOperator op(0.5, SpectralMeasure::uniform(1, 1.0));
  Mesh1D mesh = Mesh1D::graded(-1, 1, 32);
  DirichletSolution sol = solve_dirichlet(op, mesh, [](double) { return 1.0; });
  CHECK(sol.galerkin_residual < 1e-10);
  CHECK(sol.energy_value >= 0);
  for (double v : sol.values) CHECK(v >= 0);
  CHECK(sol.values.front() == 0.0);
  CHECK(sol.values.back() == 0.0);
  CHECK(sol.eval(0.0) > sol.eval(0.9));
  CHECK(sol.eval(-1.5) == 0.0);
}

TEST_CASE("energy grows monotonically under mesh refinement") {
  StableOperator op(0.5, SpectralMeasure::uniform(1, 1.0));
  Mesh1D coarse = Mesh1D::uniform(-1, 1, 8);
  Mesh1D fine = coarse.refined();
  auto f = [](double) { return 1.0; };
  DirichletSolution sc = solve_dirichlet(op, coarse, f);
  DirichletSolution sf = solve_dirichlet(op, fine, f);
  CHECK(sc.energy_value <= sf.energy_value + 1e-8);
}

TEST_CASE("solution matches the closed-form profile for constant data") {
  double s = 0.5;
  StableOperator op(s, SpectralMeasure::uniform(1, 1.0));
  Mesh1D mesh = Mesh1D::graded(-1, 1, 128);
  DirichletSolution sol = solve_dirichlet(op, mesh, [](double) { return 1.0; });
  for (double x : {0.0, 0.5, -0.5}) {
    double ref = std::pow(1.0 - x * x, s) / M_PI;
    CHECK(sol.eval(x) == doctest::Approx(ref).epsilon(0.05));
  }
}

TEST_CASE("solution scales linearly with the data") {
  StableOperator op(0.5, SpectralMeasure::uniform(1, 1.0));
  Mesh1D mesh = Mesh1D::graded(-1, 1, 32);
  DirichletSolution s1 = solve_dirichlet(op, mesh, [](double) { return 1.0; });
  DirichletSolution s3 = solve_dirichlet(op, mesh, [](double) { return 3.0; });
  for (size_t i = 0; i < s1.values.size(); ++i)
    CHECK(s3.values[i] == doctest::Approx(3.0 * s1.values[i]).epsilon(1e-10));
}

TEST_CASE("boundary decay fit recovers the exponent") {
  for (double s : {0.25, 0.75}) {
    StableOperator op(s, SpectralMeasure::uniform(1, 1.0));
    Mesh1D mesh = Mesh1D::graded(-1, 1, 256);
    DirichletSolution sol =
        solve_dirichlet(op, mesh, [](double) { return 1.0; });
    DecayFit fit = boundary_decay_fit(sol);
    CHECK(fit.exponent == doctest::Approx(s).epsilon(0.2));
    CHECK(fit.points_used >= 5);
  }
}

TEST_CASE("decay fit refuses meshes without nodes in the window") {
  StableOperator op(0.5, SpectralMeasure::uniform(1, 1.0));
  Mesh1D mesh = Mesh1D::uniform(-1, 1, 4);
  DirichletSolution sol = solve_dirichlet(op, mesh, [](double) { return 1.0; });
  CHECK_THROWS_AS(boundary_decay_fit(sol), ToleranceError);
}

TEST_CASE("solution as_function keeps compact support") {
  StableOperator op(0.5, SpectralMeasure::uniform(1, 1.0));
  Mesh1D mesh = Mesh1D::graded(-1, 1, 16);
  DirichletSolution sol = solve_dirichlet(op, mesh, [](double) { return 1.0; });
  SampledFunction f = sol.as_function();
  CHECK(f.zero_exterior());
  CHECK(f(Vec(0.0)) == doctest::Approx(sol.eval(0.0)));
  CHECK(f(Vec(2.0)) == 0.0);
}

TEST_CASE("holder seminorm scales as expected") {
  auto root = [](double x) { return std::sqrt(std::abs(x)); };
  double h_half = holder_seminorm(root, -1.0, 1.0, 0.5);
  CHECK(h_half > 0.9);
  CHECK(h_half < 2.1);
  auto lin = [](double x) { return 2.0 * x; };
  CHECK(holder_seminorm(lin, -1.0, 1.0, 1.0) == doctest::Approx(2.0));
}
