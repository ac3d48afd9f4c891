#include "stableop/config_io.hpp"

#include <cmath>

using nlohmann::json;

namespace stableop {

namespace {

Vec vec_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty() || j.size() > 3)
    throw ConfigError(where + ": expected an array of 1..3 numbers");
  if (j.size() == 1) return Vec(j[0].get<double>());
  if (j.size() == 2) return Vec(j[0].get<double>(), j[1].get<double>());
  return Vec(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

json vec_to_json(const Vec& v) {
  json a = json::array();
  for (int i = 0; i < v.dim(); ++i) a.push_back(v[i]);
  return a;
}

double require_number(const json& j, const char* key,
                      const std::string& where) {
  if (!j.contains(key) || !j[key].is_number())
    throw ConfigError(where + "/" + key + ": number required");
  return j[key].get<double>();
}

}  // namespace

json measure_to_json(const SpectralMeasure& mu) {
  json j;
  j["dim"] = mu.dim();
  switch (mu.kind()) {
    case SpectralMeasure::Kind::Uniform:
      j["kind"] = "uniform";
      j["mass"] = mu.total_mass();
      break;
    case SpectralMeasure::Kind::Atomic: {
      j["kind"] = "atomic";
      json atoms = json::array();
      for (const auto& a : mu.atoms())
        atoms.push_back({{"dir", vec_to_json(a.direction)},
                         {"weight", a.weight}});
      j["atoms"] = atoms;
      break;
    }
    default:
      throw ConfigError("/measure: density measures are built-in only");
  }
  return j;
}

SpectralMeasure measure_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw ConfigError("/measure: object with \"kind\" required");
  int dim = static_cast<int>(require_number(j, "dim", "/measure"));
  std::string kind = j["kind"].get<std::string>();
  if (kind == "uniform")
    return SpectralMeasure::uniform(dim, require_number(j, "mass", "/measure"));
  if (kind == "atomic") {
    if (!j.contains("atoms") || !j["atoms"].is_array())
      throw ConfigError("/measure/atoms: array required");
    std::vector<SphereAtom> atoms;
    for (const auto& a : j["atoms"])
      atoms.push_back({vec_from_json(a.at("dir"), "/measure/atoms/dir"),
                       require_number(a, "weight", "/measure/atoms")});
    return SpectralMeasure::atomic(dim, std::move(atoms));
  }
  throw ConfigError("/measure/kind: unknown kind \"" + kind + "\"");
}

json domain_to_json(const Domain& d) {
  json j;
  switch (d.kind()) {
    case Domain::Kind::Interval:
      j["kind"] = "interval";
      j["a"] = d.interval_a();
      j["b"] = d.interval_b();
      break;
    case Domain::Kind::Ball:
      j["kind"] = "ball";
      j["center"] = vec_to_json(d.ball_center());
      j["radius"] = d.ball_radius();
      break;
    case Domain::Kind::Polygon: {
      j["kind"] = "polygon";
      json vs = json::array();
      for (const Vec& v : d.vertices()) vs.push_back(vec_to_json(v));
      j["vertices"] = vs;
      break;
    }
    default:
      throw ConfigError("/domain: rounded polygons are internal only");
  }
  return j;
}

Domain domain_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw ConfigError("/domain: object with \"kind\" required");
  std::string kind = j["kind"].get<std::string>();
  if (kind == "interval")
    return Domain::interval(require_number(j, "a", "/domain"),
                            require_number(j, "b", "/domain"));
  if (kind == "ball")
    return Domain::ball(vec_from_json(j.at("center"), "/domain/center"),
                        require_number(j, "radius", "/domain"));
  if (kind == "polygon") {
    if (!j.contains("vertices") || !j["vertices"].is_array())
      throw ConfigError("/domain/vertices: array required");
    std::vector<Vec> vs;
    for (const auto& v : j["vertices"])
      vs.push_back(vec_from_json(v, "/domain/vertices"));
    return Domain::polygon(std::move(vs));
  }
  throw ConfigError("/domain/kind: unknown kind \"" + kind + "\"");
}

json operator_to_json(const StableOperator& op) {
  json j;
  j["s"] = op.s;
  j["measure"] = measure_to_json(op.mu);
  j["quadrature"] = {{"truncation_radius", op.quad.truncation_radius},
                     {"per_panel_order", op.quad.per_panel_order},
                     {"abs_tol", op.quad.abs_tol},
                     {"rel_tol", op.quad.rel_tol},
                     {"max_refinements", op.quad.max_refinements},
                     {"inner_cutoff", op.quad.inner_cutoff}};
  return j;
}

StableOperator operator_from_json(const json& j) {
  double s = require_number(j, "s", "/operator");
  if (!(s > 0 && s < 1))
    throw ConfigError("/operator/s: must lie strictly inside (0,1)");
  if (!j.contains("measure"))
    throw ConfigError("/operator/measure: required");
  SpectralMeasure mu = measure_from_json(j["measure"]);
  QuadratureConfig q;
  if (j.contains("quadrature")) {
    const json& k = j["quadrature"];
    if (k.contains("truncation_radius"))
      q.truncation_radius = k["truncation_radius"].get<double>();
    if (k.contains("per_panel_order"))
      q.per_panel_order = k["per_panel_order"].get<int>();
    if (k.contains("abs_tol")) q.abs_tol = k["abs_tol"].get<double>();
    if (k.contains("rel_tol")) q.rel_tol = k["rel_tol"].get<double>();
    if (k.contains("max_refinements"))
      q.max_refinements = k["max_refinements"].get<int>();
    if (k.contains("inner_cutoff"))
      q.inner_cutoff = k["inner_cutoff"].get<double>();
  }
  try {
    return StableOperator(s, std::move(mu), q);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("/operator: ") + e.what());
  }
}

SampledFunction function_from_json(const json& j, double s_hint) {
  if (!j.is_object() || !j.contains("name"))
    throw ConfigError("/function: object with \"name\" required");
  std::string name = j["name"].get<std::string>();

  if (name == "constant") {
    double v = require_number(j, "value", "/function");
    return SampledFunction::callable(
        j.value("dim", 1), [v](const Vec&) { return v; }, Smoothness::C2);
  }
  if (name == "bump") {
    Vec c = vec_from_json(j.at("center"), "/function/center");
    double w = require_number(j, "width", "/function");
    double h = j.value("height", 1.0);
    return bump_function(c, w, h);
  }
  if (name == "counterexample") {
    double s = j.value("s", s_hint);
    if (!(s > 0 && s < 1)) throw ConfigError("/function/s: need s in (0,1)");
    SampledFunction u = SampledFunction::callable(
        1,
        [s](const Vec& x) {
          double t = 1.0 - x[0] * x[0];
          return t > 0 ? std::pow(t, s - 1.0) : 0.0;
        },
        Smoothness::C2);
    u.with_support(Domain::interval(-1.0, 1.0));
    return u;
  }
  if (name == "smooth-profile") {
    double p = j.value("exponent", s_hint);
    SampledFunction u = SampledFunction::callable(
        1,
        [p](const Vec& x) {
          double t = 1.0 - x[0] * x[0];
          return t > 0 ? std::pow(t, p) : 0.0;
        },
        p >= 1.0 ? Smoothness::C2 : Smoothness::C0);
    u.with_support(Domain::interval(-1.0, 1.0));
    return u;
  }
  if (name == "harmonic-saddle")
    return SampledFunction::callable(
        2, [](const Vec& x) { return x[0] * x[0] - x[1] * x[1]; },
        Smoothness::C2);
  if (name == "paraboloid")
    return SampledFunction::callable(
        2, [](const Vec& x) { return x[0] * x[0] + x[1] * x[1]; },
        Smoothness::C2);
  if (name == "wedge-reciprocal")
    return SampledFunction::callable(
        2,
        [](const Vec& x) {
          double p = x[0] * x[1];
          return p != 0.0 ? 1.0 / p : 0.0;
        },
        Smoothness::C2);
  if (name == "grid") {
    if (!j.contains("nodes") || !j.contains("values"))
      throw ConfigError("/function: grid needs \"nodes\" and \"values\"");
    return SampledFunction::grid1d(j["nodes"].get<std::vector<double>>(),
                                   j["values"].get<std::vector<double>>(),
                                   Interp::Linear, Smoothness::C0);
  }
  throw ConfigError("/function/name: unknown function \"" + name + "\"");
}

json report_to_json(const HypothesisReport& rep) {
  json ladder = json::array();
  for (const auto& r : rep.boundary_ladder)
    ladder.push_back({{"eps", r.eps}, {"value", r.value}});
  return json{
      {"ultrasubharmonic",
       {{"test_function_count", rep.ultrasubharmonic.test_function_count},
        {"max_pairing_value", rep.ultrasubharmonic.max_pairing_value},
        {"threshold", rep.ultrasubharmonic.threshold},
        {"verdict", to_string(rep.ultrasubharmonic.verdict)}}},
      {"exterior_sign",
       {{"sample_count", rep.exterior_sample_count},
        {"max_exterior_value", rep.max_exterior_value},
        {"verdict", to_string(rep.exterior_sign)}}},
      {"boundary_functional",
       {{"ladder", ladder}, {"verdict", to_string(rep.boundary_limit)}}},
      {"conclusion",
       {{"interior_grid", rep.interior_grid_count},
        {"sup_positive_part", rep.sup_positive_part},
        {"tol", rep.conclusion_tol},
        {"verdict", to_string(rep.conclusion)}}},
      {"internal_inconsistency", rep.internal_inconsistency}};
}

json trace_to_json(const PipelineTrace& tr) {
  json steps = json::array();
  for (const auto& s : tr.steps)
    steps.push_back({{"eps", s.eps},
                     {"v_eps_psi", s.v_eps_psi},
                     {"band_integral", s.band_integral},
                     {"holder_ratio", s.holder_ratio},
                     {"remainder_bound", s.remainder_bound},
                     {"solver_residual", s.solver_residual}});
  return json{{"steps", steps},
              {"convolved_constant", tr.convolved_constant},
              {"remainder_vanishes", tr.remainder_vanishes},
              {"limsup_nonpositive", tr.limsup_nonpositive}};
}

}  // namespace stableop
