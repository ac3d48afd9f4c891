#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "stableop/config_io.hpp"

using namespace stableop;
using nlohmann::json;

TEST_CASE("measure round-trip") {
  for (const SpectralMeasure& mu :
       {SpectralMeasure::uniform(2, 1.5),
        SpectralMeasure::atomic(
            2, {{Vec(1.0, 0.0), 1.0}, {Vec(0.0, 1.0), 2.0}})}) {
    json j = measure_to_json(mu);
    SpectralMeasure back = measure_from_json(j);
    CHECK(measure_to_json(back).dump() == j.dump());
    CHECK(back.total_mass() == doctest::Approx(mu.total_mass()));
    CHECK(back.dim() == mu.dim());
  }
}

TEST_CASE("domain round-trip") {
  for (const Domain& d :
       {Domain::interval(-2, 3), Domain::ball(Vec(0.5, -0.5), 1.25),
        Domain::polygon({Vec(0.0, 0.0), Vec(1.0, 0.0), Vec(0.5, 1.0)})}) {
    json j = domain_to_json(d);
    Domain back = domain_from_json(j);
    CHECK(domain_to_json(back).dump() == j.dump());
    CHECK(back.dim() == d.dim());
    CHECK(back.volume() == doctest::Approx(d.volume()));
  }
}

TEST_CASE("operator round-trip preserves quadrature overrides") {
  json j = {{"s", 0.4},
            {"measure", {{"kind", "uniform"}, {"dim", 1}, {"mass", 2.0}}},
            {"quadrature", {{"per_panel_order", 10}, {"abs_tol", 1e-8}}}};
  StableOperator op = operator_from_json(j);
  CHECK(op.s == 0.4);
  CHECK(op.mu.total_mass() == doctest::Approx(2.0));
  CHECK(op.quad.per_panel_order == 10);
  CHECK(op.quad.abs_tol == 1e-8);
  json out = operator_to_json(op);
  StableOperator back = operator_from_json(out);
  CHECK(operator_to_json(back).dump() == out.dump());
}

TEST_CASE("config errors carry a path") {
  CHECK_THROWS_WITH_AS(measure_from_json(json{{"kind", "banana"}, {"dim", 1}}),
                       doctest::Contains("/measure/kind"), ConfigError);
  CHECK_THROWS_WITH_AS(domain_from_json(json{{"kind", "interval"}}),
                       doctest::Contains("/domain"), ConfigError);
  CHECK_THROWS_WITH_AS(
      operator_from_json(json{
          {"s", 1.5},
          {"measure", {{"kind", "uniform"}, {"dim", 1}, {"mass", 1.0}}}}),
      doctest::Contains("/operator/s"), ConfigError);
  CHECK_THROWS_AS(function_from_json(json{{"name", "mystery"}}, 0.5),
                  ConfigError);
}

TEST_CASE("density measures are rejected by the schema") {
  SpectralMeasure rho = SpectralMeasure::density(
      2, [](const Vec&) { return 1.0; });
  CHECK_THROWS_AS(measure_to_json(rho), ConfigError);
}

TEST_CASE("builtin functions evaluate correctly") {
  SampledFunction c =
      function_from_json(json{{"name", "constant"}, {"value", -2.0}}, 0.5);
  CHECK(c(Vec(0.7)) == -2.0);

  SampledFunction b = function_from_json(
      json{{"name", "bump"}, {"center", {0.0}}, {"width", 1.0}}, 0.5);
  CHECK(b(Vec(0.0)) == doctest::Approx(1.0));
  CHECK(b(Vec(1.5)) == 0.0);
  CHECK(b.zero_exterior());

  SampledFunction cx =
      function_from_json(json{{"name", "counterexample"}}, 0.5);
  CHECK(cx(Vec(0.0)) == doctest::Approx(1.0));
  CHECK(cx(Vec(2.0)) == 0.0);
  CHECK(cx(Vec(0.5)) == doctest::Approx(std::pow(0.75, -0.5)));

  SampledFunction g = function_from_json(
      json{{"name", "grid"}, {"nodes", {0.0, 1.0, 2.0}},
           {"values", {0.0, 1.0, 0.0}}},
      0.5);
  CHECK(g(Vec(0.5)) == doctest::Approx(0.5));
  CHECK(g(Vec(3.0)) == 0.0);

  SampledFunction saddle =
      function_from_json(json{{"name", "harmonic-saddle"}}, 0.5);
  CHECK(saddle(Vec(2.0, 1.0)) == doctest::Approx(3.0));
}

TEST_CASE("report serialization is deterministic") {
  HypothesisReport rep;
  rep.ultrasubharmonic.test_function_count = 3;
  rep.ultrasubharmonic.max_pairing_value = -1.0 / 3.0;
  rep.ultrasubharmonic.verdict = Verdict::Pass;
  rep.boundary_ladder = {{0.1, 0.25}, {0.05, 0.125}};
  rep.boundary_limit = Verdict::Pass;
  rep.exterior_sign = Verdict::Pass;
  rep.conclusion = Verdict::Pass;
  CHECK(report_to_json(rep).dump() == report_to_json(rep).dump());
  json j = report_to_json(rep);
  CHECK(j["ultrasubharmonic"]["verdict"] == "pass");
  CHECK(j["boundary_functional"]["ladder"].size() == 2);
}
