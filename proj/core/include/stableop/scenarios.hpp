#pragma once

#include <string>
#include <vector>

#include "stableop/sampled_function.hpp"
#include "stableop/stable_operator.hpp"

namespace stableop {

/// Built-in, self-contained verification scenarios.
struct Scenario {
  std::string name;
  StableOperator op;
  Domain domain;
  SampledFunction u;
  std::vector<double> ladder;
  /// "verify": run the stable-operator hypothesis checks.
  /// "classical": run the Laplacian mode.
  /// "integrability": check that tail_norm is finite while |u| fails to be
  /// integrable on the domain itself.
  std::string mode;
  /// Verdict expected of a correct implementation (used by the CLI to pick
  /// the exit code semantics, not to force the result).
  bool expect_hypotheses_pass;
};

std::vector<std::string> scenario_names();
Scenario make_scenario(const std::string& name);

}  // namespace stableop
