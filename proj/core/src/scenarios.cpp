#include "stableop/scenarios.hpp"

#include <cmath>
#include <stdexcept>

#include "stableop/solver.hpp"

namespace stableop {

std::vector<std::string> scenario_names() {
  return {"counterexample",  "negative-constant",      "solved-dirichlet",
          "wedge-appendix-b", "classical-laplacian-demo", "negative-profile",
          "positive-bump"};
}

Scenario make_scenario(const std::string& name) {
  const std::vector<double> ladder = {0.1, 0.05, 0.025, 0.0125};

  if (name == "counterexample") {
    double s = 0.5;
    StableOperator op(s, SpectralMeasure::uniform(1, 1.0));
    SampledFunction u = SampledFunction::callable(
        1,
        [s](const Vec& x) {
          double t = 1.0 - x[0] * x[0];
          return t > 0 ? std::pow(t, s - 1.0) : 0.0;
        },
        Smoothness::C2);
    u.with_support(Domain::interval(-1.0, 1.0));
    return {name, op, Domain::interval(-1.0, 1.0), u, ladder, "verify",
            false};
  }
  if (name == "negative-constant") {
    StableOperator op(0.5, SpectralMeasure::uniform(1, 1.0));
    SampledFunction u = SampledFunction::callable(
        1, [](const Vec&) { return -1.0; }, Smoothness::C2);
    return {name, op, Domain::interval(-1.0, 1.0), u, ladder, "verify", true};
  }
  if (name == "solved-dirichlet") {
    StableOperator op(0.5, SpectralMeasure::uniform(1, 1.0));
    // f = 1 keeps the true pairing strictly negative against every test
    // bump, so discretization error cannot flip the verdict
    Mesh1D mesh = Mesh1D::graded(-1.0, 1.0, 64);
    DirichletSolution sol =
        solve_dirichlet(op, mesh, [](double) { return 1.0; });
    SampledFunction u = sol.as_function().scaled(-1.0);
    return {name, op, Domain::interval(-1.0, 1.0), u, ladder, "verify", true};
  }
  if (name == "wedge-appendix-b") {
    StableOperator op(0.5, SpectralMeasure::atomic(
                               2, {{Vec(1.0, 0.0), 1.0}, {Vec(0.0, 1.0), 1.0}}));
    Domain wedge = Domain::polygon({Vec(0.0, 0.0), Vec(1.0, 0.5),
                                    Vec(1.0, 1.0), Vec(2.0 / 3.0, 1.0)});
    // (xy)^{-1} on the wedge, zero elsewhere
    SampledFunction u = SampledFunction::callable(
        2,
        [](const Vec& x) {
          double p = x[0] * x[1];
          return p != 0.0 ? 1.0 / p : 0.0;
        },
        Smoothness::C2);
    u.with_support(wedge);
    return {name, op, wedge, u, ladder, "integrability", false};
  }
  if (name == "classical-laplacian-demo") {
    StableOperator op(0.5, SpectralMeasure::uniform(2, 1.0));
    SampledFunction u = SampledFunction::callable(
        2, [](const Vec& x) { return x[0] * x[0] - x[1] * x[1]; },
        Smoothness::C2);
    return {name, op, Domain::ball(Vec(0.0, 0.0), 1.0), u, ladder,
            "classical", false};
  }
  if (name == "negative-profile") {
    // -(1-x^2)^s vanishes outside (-1,1) and has A_s u = -const < 0 inside
    double s = 0.5;
    StableOperator op(s, SpectralMeasure::uniform(1, 1.0));
    SampledFunction u = SampledFunction::callable(
        1,
        [s](const Vec& x) {
          double t = 1.0 - x[0] * x[0];
          return t > 0 ? -std::pow(t, s) : 0.0;
        },
        Smoothness::C2);
    u.with_support(Domain::interval(-1.0, 1.0));
    return {name, op, Domain::interval(-1.0, 1.0), u, ladder, "verify", true};
  }
  if (name == "positive-bump") {
    StableOperator op(0.5, SpectralMeasure::uniform(1, 1.0));
    SampledFunction u = bump_function(Vec(0.0), 0.6, 1.0);
    return {name, op, Domain::interval(-1.0, 1.0), u, ladder, "verify",
            false};
  }
  throw std::invalid_argument("unknown scenario \"" + name + "\"");
}

}  // namespace stableop
