#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "stableop/config_io.hpp"
#include "stableop/scenarios.hpp"
#include "stableop/verifier.hpp"

using namespace stableop;

namespace {

SampledFunction counterexample_profile(double s) {
  SampledFunction u = SampledFunction::callable(
      1,
      [s](const Vec& x) {
        double t = 1.0 - x[0] * x[0];
        return t > 0 ? std::pow(t, s - 1.0) : 0.0;
      },
      Smoothness::C2);
  u.with_support(Domain::interval(-1, 1));
  return u;
}

}  // namespace

TEST_CASE("bump family is admissible") {
  Domain Om = Domain::interval(-1, 1);
  auto family = default_bump_family(Om, 4, 3);
  CHECK(family.size() == 12);
  for (const auto& eta : family) {
    REQUIRE(eta.support() != nullptr);
    auto bb = eta.support()->bounding_ball();
    CHECK(bb.center[0] - bb.radius > -1.0);
    CHECK(bb.center[0] + bb.radius < 1.0);
    for (double x : {-0.9, -0.3, 0.4, 0.8}) CHECK(eta(Vec(x)) >= 0.0);
  }
}

TEST_CASE("boundary functional of a constant decays like eps^{1-s}") {
  Domain Om = Domain::interval(-1, 1);
  SampledFunction one = SampledFunction::callable(
      1, [](const Vec&) { return 1.0; }, Smoothness::C2);
  auto rows = boundary_functional(one, Om, 0.5, {0.1, 0.05});
  REQUIRE(rows.size() == 2);
  // band has two sides: integral = 2 eps, value = 2 eps^{1-s}
  CHECK(rows[0].value == doctest::Approx(2.0 * std::pow(0.1, 0.5)).epsilon(1e-6));
  CHECK(rows[1].value == doctest::Approx(2.0 * std::pow(0.05, 0.5)).epsilon(1e-6));
}

TEST_CASE("counterexample ladder stabilizes near 2^s/s") {
  Domain Om = Domain::interval(-1, 1);
  for (double s : {0.3, 0.7}) {
    auto rows = boundary_functional(counterexample_profile(s), Om, s,
                                    {0.1, 0.05, 0.025, 0.0125});
    double oracle = std::pow(2.0, s) / s;
    CHECK(rows.back().value == doctest::Approx(oracle).epsilon(0.01));
    CHECK(rows.back().value / rows.front().value > 0.9);
  }
}

TEST_CASE("shifted exponent makes the counterexample ladder decay") {
  Domain Om = Domain::interval(-1, 1);
  for (double s : {0.3, 0.5, 0.7}) {
    auto rows = boundary_functional(counterexample_profile(s), Om, s,
                                    {0.1, 0.01, 1e-3, 1e-4, 1e-5}, 0.1);
    CHECK(rows.back().value / rows.front().value < 0.5);
  }
}

TEST_CASE("full verification of the scenario corpus") {
  for (const std::string& name : scenario_names()) {
    Scenario sc = make_scenario(name);
    if (sc.mode == "integrability") continue;
    HypothesisReport rep =
        sc.mode == "classical"
            ? classical_mp_check(sc.u, sc.domain)
            : verify_max_principle(sc.op, sc.u, sc.domain);
    CHECK(rep.hypotheses_pass() == sc.expect_hypotheses_pass);
    CHECK(!rep.internal_inconsistency);
    if (rep.hypotheses_pass()) CHECK(rep.conclusion == Verdict::Pass);
  }
}

TEST_CASE("counterexample reports the exact verdict pattern") {
  Scenario sc = make_scenario("counterexample");
  HypothesisReport rep = verify_max_principle(sc.op, sc.u, sc.domain);
  CHECK(rep.ultrasubharmonic.verdict == Verdict::Pass);
  CHECK(rep.exterior_sign == Verdict::Pass);
  CHECK(rep.boundary_limit == Verdict::Fail);
  CHECK(rep.conclusion == Verdict::Fail);
  CHECK(!rep.internal_inconsistency);
}

TEST_CASE("reports are deterministic byte for byte") {
  Scenario sc = make_scenario("negative-profile");
  HypothesisReport a = verify_max_principle(sc.op, sc.u, sc.domain);
  HypothesisReport b = verify_max_principle(sc.op, sc.u, sc.domain);
  CHECK(report_to_json(a).dump() == report_to_json(b).dump());
}

TEST_CASE("hypothesis verdicts are invariant under positive scaling") {
  Scenario sc = make_scenario("counterexample");
  for (double c : {0.1, 7.0}) {
    HypothesisReport rep =
        verify_max_principle(sc.op, sc.u.scaled(c), sc.domain);
    CHECK(rep.ultrasubharmonic.verdict == Verdict::Pass);
    CHECK(rep.exterior_sign == Verdict::Pass);
    CHECK(rep.boundary_limit == Verdict::Fail);
    CHECK(rep.conclusion == Verdict::Fail);
  }
}

TEST_CASE("classical mode: harmonic equality and subharmonic pass") {
  Domain ball = Domain::ball(Vec(0.0, 0.0), 1.0);
  SampledFunction harmonic = SampledFunction::callable(
      2, [](const Vec& x) { return x[0] * x[0] - x[1] * x[1]; },
      Smoothness::C2);
  HypothesisReport rh = classical_mp_check(harmonic, ball);
  CHECK(std::abs(rh.ultrasubharmonic.max_pairing_value) < 1e-8);
  CHECK(rh.ultrasubharmonic.verdict == Verdict::Pass);

  SampledFunction para = SampledFunction::callable(
      2, [](const Vec& x) { return x[0] * x[0] + x[1] * x[1] - 2.0; },
      Smoothness::C2);
  HypothesisReport rp = classical_mp_check(para, ball);
  CHECK(rp.ultrasubharmonic.verdict == Verdict::Pass);

  SampledFunction super = SampledFunction::callable(
      2, [](const Vec& x) { return -x[0] * x[0] - x[1] * x[1]; },
      Smoothness::C2);
  HypothesisReport rs = classical_mp_check(super, ball);
  CHECK(rs.ultrasubharmonic.verdict == Verdict::Fail);
}

TEST_CASE("pipeline replay separates the counterexample from a subsolution") {
  SampledFunction psi = bump_function(Vec(0.0), 0.3, 1.0);
  Scenario cx = make_scenario("counterexample");
  PipelineTrace tr =
      pipeline_replay(cx.op, cx.u, cx.domain, psi, {0.1, 0.05, 0.025});
  REQUIRE(tr.steps.size() == 3);
  CHECK(!tr.remainder_vanishes);
  CHECK(!tr.limsup_nonpositive);
  for (const auto& st : tr.steps) {
    CHECK(st.solver_residual < 1e-10);
    CHECK(st.v_eps_psi > 0.3);  // converges to int u psi > 0
  }

  Scenario np = make_scenario("negative-profile");
  PipelineTrace tn =
      pipeline_replay(np.op, np.u, np.domain, psi, {0.1, 0.05, 0.025});
  CHECK(tn.remainder_vanishes);
  CHECK(tn.limsup_nonpositive);
}

TEST_CASE("ladder verdict semantics") {
  std::vector<LadderRow> decaying = {{0.1, 1.0}, {0.05, 0.2}, {0.025, 0.05}};
  CHECK(ladder_verdict(decaying, 1.0) == Verdict::Pass);
  std::vector<LadderRow> flat = {{0.1, 1.0}, {0.05, 0.99}, {0.025, 0.98}};
  CHECK(ladder_verdict(flat, 1.0) == Verdict::Fail);
  std::vector<LadderRow> negligible = {{0.1, 1e-12}, {0.05, 1e-12}};
  CHECK(ladder_verdict(negligible, 1.0) == Verdict::Pass);
}

TEST_CASE("unknown scenario name is rejected") {
  CHECK_THROWS_AS(make_scenario("no-such-scenario"), std::invalid_argument);
}
