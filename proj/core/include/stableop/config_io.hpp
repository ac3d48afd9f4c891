#pragma once

#include <json.hpp>
#include <stdexcept>
#include <string>

#include "stableop/sampled_function.hpp"
#include "stableop/spectral.hpp"
#include "stableop/stable_operator.hpp"
#include "stableop/verifier.hpp"

namespace stableop {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

nlohmann::json measure_to_json(const SpectralMeasure& mu);
SpectralMeasure measure_from_json(const nlohmann::json& j);

nlohmann::json domain_to_json(const Domain& d);
Domain domain_from_json(const nlohmann::json& j);

nlohmann::json operator_to_json(const StableOperator& op);
StableOperator operator_from_json(const nlohmann::json& j);

/// Named builtin functions: constant, bump, counterexample, smooth-profile,
/// harmonic-saddle, paraboloid, wedge-reciprocal, grid.
SampledFunction function_from_json(const nlohmann::json& j, double s_hint);

nlohmann::json report_to_json(const HypothesisReport& rep);
nlohmann::json trace_to_json(const PipelineTrace& tr);

}  // namespace stableop
