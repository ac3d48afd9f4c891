#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "stableop/geometry.hpp"
#include "stableop/spectral.hpp"

using namespace stableop;

TEST_CASE("uniform measure mass and directions") {
  SpectralMeasure mu = SpectralMeasure::uniform(2, 3.5);
  CHECK(mu.total_mass() == doctest::Approx(3.5));
  double w = 0;
  for (const auto& a : mu.directions(64)) {
    CHECK(std::abs(a.direction.norm() - 1.0) < 1e-12);
    w += a.weight;
  }
  CHECK(w == doctest::Approx(3.5));
}

TEST_CASE("atomic measure returns atoms exactly") {
  SpectralMeasure mu = SpectralMeasure::atomic(
      2, {{Vec(1.0, 0.0), 0.25}, {Vec(0.0, 1.0), 0.75}});
  CHECK(mu.total_mass() == doctest::Approx(1.0));
  auto dirs = mu.directions();
  REQUIRE(dirs.size() == 2);
  CHECK(dirs[0].weight == 0.25);
  CHECK(dirs[1].weight == 0.75);
}

TEST_CASE("invalid measures rejected") {
  CHECK_THROWS_AS(SpectralMeasure::uniform(1, -1.0), InvalidMeasureError);
  CHECK_THROWS_AS(
      SpectralMeasure::atomic(2, {{Vec(1.0, 0.0), -0.5}}),
      InvalidMeasureError);
}

TEST_CASE("levy scaling identity on the (s,t) grid") {
  for (double s : {0.25, 0.5, 0.75})
    for (double t : {0.5, 1.0, 2.0}) {
      LevyMeasure levy(SpectralMeasure::uniform(1, 1.0), s);
      ScalingIdentityResult r = levy_scaling_identity(levy, t);
      CHECK(r.relative_gap < 1e-6);
      double rhs_expected = t == 1.0 && s == 0.5 ? 4.0 : r.rhs;
      CHECK(r.rhs == doctest::Approx(rhs_expected));
    }
}

TEST_CASE("scaling identity right side is homogeneous of degree 2-2s") {
  for (double s : {0.3, 0.6}) {
    LevyMeasure levy(SpectralMeasure::uniform(1, 2.0), s);
    double r1 = levy_scaling_identity(levy, 1.0).rhs;
    double r2 = levy_scaling_identity(levy, 2.0).rhs;
    CHECK(r2 / r1 == doctest::Approx(std::pow(2.0, 2.0 - 2.0 * s)));
  }
}

TEST_CASE("levy measure of a box is symmetric under reflection") {
  LevyMeasure levy(
      SpectralMeasure::atomic(2, {{Vec(1.0, 0.0), 1.0}, {Vec(0.0, 1.0), 1.0}}),
      0.5);
  double a = levy.measure_of_box(Vec(0.5, -0.1), Vec(2.0, 0.1));
  double b = levy.measure_of_box(Vec(-2.0, -0.1), Vec(-0.5, 0.1));
  CHECK(a == doctest::Approx(b).epsilon(1e-10));
}

TEST_CASE("nondegeneracy analytic values") {
  CHECK(nondegeneracy_constant(SpectralMeasure::uniform(1, 1.0), 0.5) ==
        doctest::Approx(1.0).epsilon(1e-3));
  double v1 = nondegeneracy_constant(
      SpectralMeasure::atomic(2, {{Vec(1.0, 0.0), 1.0}, {Vec(0.0, 1.0), 1.0}}),
      0.5);
  CHECK(v1 == doctest::Approx(1.0).epsilon(1e-3));
  double v2 = nondegeneracy_constant(
      SpectralMeasure::atomic(2, {{Vec(0.0, 1.0), 1.0}}), 0.5);
  CHECK(std::abs(v2) < 1e-3);
  double v3 = nondegeneracy_constant(SpectralMeasure::uniform(2, 2 * M_PI), 0.5);
  CHECK(v3 == doctest::Approx(4.0).epsilon(1e-3));
}

TEST_CASE("tail weight decays like the kernel and vanishes nowhere") {
  LevyMeasure levy(SpectralMeasure::uniform(1, 1.0), 0.5);
  Domain Om = Domain::interval(-1, 1);
  TailWeight ns(levy, Om);
  double inside = ns(Vec(0.0));
  double near = ns(Vec(3.0));
  double far = ns(Vec(30.0));
  CHECK(inside > near);
  CHECK(near > far);
  CHECK(far > 0);
  // comparability with (1+|x|)^{-1-2s}
  double c_near = near * std::pow(4.0, 2.0);
  double c_far = far * std::pow(31.0, 2.0);
  CHECK(c_near / c_far < 10.0);
  CHECK(c_far / c_near < 10.0);
}

TEST_CASE("tail norm finite for a bump, divergent for quadratic growth") {
  LevyMeasure levy(SpectralMeasure::uniform(1, 1.0), 0.5);
  Domain Om = Domain::interval(-1, 1);
  TailWeight ns(levy, Om);
  TailNormResult r =
      tail_norm([](const Vec& x) { return std::exp(-x[0] * x[0]); }, ns);
  CHECK(r.value > 0);
  CHECK(r.tail_estimate < 1e-5 * r.value);
  CHECK_THROWS_AS(
      tail_norm([](const Vec& x) { return x[0] * x[0]; }, ns),
      DivergentNormError);
}

TEST_CASE("tail norm is positively homogeneous") {
  LevyMeasure levy(SpectralMeasure::uniform(1, 1.0), 0.5);
  Domain Om = Domain::interval(-1, 1);
  TailWeight ns(levy, Om);
  auto u = [](const Vec& x) { return 1.0 / (1.0 + x[0] * x[0]); };
  double n1 = tail_norm(u, ns).value;
  double n3 = tail_norm([&](const Vec& x) { return 3.0 * u(x); }, ns).value;
  CHECK(n3 == doctest::Approx(3.0 * n1).epsilon(1e-10));
}
