// Command-line front-end: operator evaluation, tail weights, the Dirichlet
// solver, and the maximum-principle verifier. Exit codes: 0 success/pass,
// 2 hypothesis-fail verdict, 1 error.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "stableop/config_io.hpp"
#include "stableop/quadrature.hpp"
#include "stableop/scenarios.hpp"
#include "stableop/solver.hpp"
#include "stableop/spectral.hpp"
#include "stableop/stable_operator.hpp"
#include "stableop/verifier.hpp"

using nlohmann::json;
using namespace stableop;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitHypothesisFail = 2;

struct Output {
  std::string json_path;
  std::string csv_path;
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  f << text;
}

std::string csv_line(const std::vector<double>& vals) {
  std::ostringstream os;
  os << std::setprecision(17);
  for (size_t i = 0; i < vals.size(); ++i) {
    if (i) os << ',';
    os << vals[i];
  }
  os << '\n';
  return os.str();
}

json load_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    f >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  return j;
}

int emit_report(const HypothesisReport& rep, const Output& out) {
  write_text(out.json_path, report_to_json(rep).dump(2));
  if (!out.csv_path.empty()) {
    std::string csv = "eps,value\n";
    for (const auto& r : rep.boundary_ladder)
      csv += csv_line({r.eps, r.value});
    write_text(out.csv_path, csv);
  }
  if (rep.internal_inconsistency) return kExitError;
  return rep.hypotheses_pass() && rep.conclusion == Verdict::Pass
             ? kExitOk
             : kExitHypothesisFail;
}

int run_integrability(const Scenario& sc, const Output& out) {
  LevyMeasure levy(sc.op.mu, sc.op.s);
  TailWeight tw(levy, sc.domain);
  SampledFunction u = sc.u;
  auto fn = [&u](const Vec& x) { return u(x); };
  TailNormResult tn = tail_norm(fn, tw);

  // |u| over the domain away from the singular corner, growing as the
  // cutoff tau shrinks: non-integrability probe. Inner y-integral taken
  // along the vertical chord of the (convex) domain.
  json growth = json::array();
  auto bb = sc.domain.bounding_ball();
  double xmax = bb.center[0] + bb.radius;
  Vec e2 = Vec::unit(2, 1);
  auto slice = [&](double x) {
    // a point of the domain on this vertical line, if any
    for (double frac : {0.75, 0.5, 0.9, 0.25, 0.6}) {
      Vec p(x, frac * x);
      if (sc.domain.contains(p)) {
        auto ch = sc.domain.chord(p, e2);
        if (!ch) return 0.0;
        double y1 = p[1] + ch->first, y2 = p[1] + ch->second;
        auto g = [&](double y) { return std::abs(u(Vec(x, y))); };
        return quad::graded(g, y1, y2, true, true, 8, 24);
      }
    }
    return 0.0;
  };
  for (double tau : {1e-2, 1e-3, 1e-4}) {
    double v = quad::over_breakpoints(slice, tau, xmax, {2.0 / 3.0}, 8, 30);
    growth.push_back({{"tau", tau}, {"integral", v}});
  }
  json j{{"scenario", sc.name},
         {"tail_norm", tn.value},
         {"tail_norm_truncation_radius", tn.truncation_radius},
         {"domain_l1_growth", growth},
         {"verdict",
          "tail norm finite but |u| not integrable on the domain: pairing "
          "hypotheses not satisfiable"}};
  write_text(out.json_path, j.dump(2));
  if (!out.csv_path.empty()) {
    std::string csv = "tau,integral\n";
    for (const auto& g : growth)
      csv += csv_line({g["tau"].get<double>(), g["integral"].get<double>()});
    write_text(out.csv_path, csv);
  }
  return kExitHypothesisFail;
}

int run_scenario(const Scenario& sc, const Output& out, bool replay_mode,
                 const std::vector<double>& ladder_override) {
  std::vector<double> ladder =
      ladder_override.empty() ? sc.ladder : ladder_override;
  if (replay_mode) {
    SampledFunction psi = bump_function(Vec(0.0), 0.3, 1.0);
    PipelineTrace tr = pipeline_replay(sc.op, sc.u, sc.domain, psi, ladder);
    write_text(out.json_path, trace_to_json(tr).dump(2));
    if (!out.csv_path.empty()) {
      std::string csv =
          "eps,v_eps_psi,band_integral,holder_ratio,remainder_bound,"
          "solver_residual\n";
      for (const auto& s : tr.steps)
        csv += csv_line({s.eps, s.v_eps_psi, s.band_integral, s.holder_ratio,
                         s.remainder_bound, s.solver_residual});
      write_text(out.csv_path, csv);
    }
    return tr.limsup_nonpositive ? kExitOk : kExitHypothesisFail;
  }
  if (sc.mode == "classical") {
    VerifierConfig cfg;
    cfg.eps_ladder = ladder;
    return emit_report(classical_mp_check(sc.u, sc.domain, cfg), out);
  }
  if (sc.mode == "integrability") return run_integrability(sc, out);
  VerifierConfig cfg;
  cfg.eps_ladder = ladder;
  return emit_report(verify_max_principle(sc.op, sc.u, sc.domain, cfg), out);
}

Scenario scenario_from_config(const json& j) {
  StableOperator op = operator_from_json(j.at("operator"));
  Domain dom = domain_from_json(j.at("domain"));
  SampledFunction u = function_from_json(j.at("function"), op.s);
  std::vector<double> ladder = {0.1, 0.05, 0.025, 0.0125};
  if (j.contains("ladder")) ladder = j["ladder"].get<std::vector<double>>();
  std::string mode = j.value("mode", "verify");
  return {j.value("name", std::string("custom")), op, dom, u, ladder, mode,
          false};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical toolkit for 2s-stable nonlocal operators"};
  app.require_subcommand(1);

  int threads = 1;
  if (const char* env = std::getenv("STABLEOP_THREADS")) threads = std::atoi(env);
  app.add_option("--threads", threads, "worker thread budget");

  double s = 0.5, mass = 1.0, t_scale = 1.0, kappa = 0.0;
  double dom_a = -1.0, dom_b = 1.0;
  int cells = 64, n_points = 21;
  std::string function_name = "bump", scenario_name, config_path;
  Output out;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--out-json", out.json_path, "report JSON path (- = stdout)");
    c->add_option("--out-csv", out.csv_path, "CSV output path");
  };

  auto* cmd_eval = app.add_subcommand("eval-op", "evaluate A_s u on a grid");
  cmd_eval->add_option("--s", s);
  cmd_eval->add_option("--mass", mass);
  cmd_eval->add_option("--function", function_name);
  cmd_eval->add_option("--a", dom_a);
  cmd_eval->add_option("--b", dom_b);
  cmd_eval->add_option("--points", n_points);
  cmd_eval->add_option("--kappa", kappa, "jump-size truncation (0 = p.v.)");
  add_common(cmd_eval);

  auto* cmd_tw = app.add_subcommand("tail-weight", "evaluate nu*(x)");
  cmd_tw->add_option("--s", s);
  cmd_tw->add_option("--mass", mass);
  cmd_tw->add_option("--a", dom_a);
  cmd_tw->add_option("--b", dom_b);
  cmd_tw->add_option("--points", n_points);
  add_common(cmd_tw);

  auto* cmd_nd = app.add_subcommand("nondegeneracy",
                                    "nondegeneracy constant of (mu, s)");
  cmd_nd->add_option("--s", s);
  cmd_nd->add_option("--config", config_path, "measure JSON file");
  cmd_nd->add_option("--mass", mass);
  add_common(cmd_nd);

  auto* cmd_si = app.add_subcommand("scaling-identity",
                                    "Levy-measure scaling identity");
  cmd_si->add_option("--s", s);
  cmd_si->add_option("--t", t_scale);
  cmd_si->add_option("--mass", mass);
  add_common(cmd_si);

  auto* cmd_solve = app.add_subcommand("solve", "Dirichlet solve on (a,b)");
  cmd_solve->add_option("--s", s);
  cmd_solve->add_option("--mass", mass);
  cmd_solve->add_option("--a", dom_a);
  cmd_solve->add_option("--b", dom_b);
  cmd_solve->add_option("--cells", cells);
  cmd_solve->add_option("--f", function_name, "right-hand side (builtin name)");
  add_common(cmd_solve);

  auto* cmd_verify = app.add_subcommand("verify-mp",
                                        "maximum-principle hypothesis checks");
  cmd_verify->add_option("--scenario", scenario_name);
  cmd_verify->add_option("--config", config_path);
  add_common(cmd_verify);

  auto* cmd_replay = app.add_subcommand("replay",
                                        "proof-pipeline replay on an interval");
  cmd_replay->add_option("--scenario", scenario_name);
  cmd_replay->add_option("--config", config_path);
  add_common(cmd_replay);

  auto* cmd_classical = app.add_subcommand("classical-mp",
                                           "Laplacian-mode checks");
  cmd_classical->add_option("--scenario", scenario_name);
  cmd_classical->add_option("--config", config_path);
  add_common(cmd_classical);

  CLI11_PARSE(app, argc, argv);
  (void)threads;

  try {
    if (cmd_eval->parsed()) {
      StableOperator op(s, SpectralMeasure::uniform(1, mass));
      json fj = {{"name", function_name}};
      if (function_name == "bump")
        fj = {{"name", "bump"}, {"center", {0.0}}, {"width", 0.5}};
      if (function_name == "constant")
        fj = {{"name", "constant"}, {"value", 1.0}};
      SampledFunction u = function_from_json(fj, s);
      std::string csv = "x,value\n";
      for (int i = 0; i < n_points; ++i) {
        double x = dom_a + (i + 0.5) * (dom_b - dom_a) / n_points;
        double v = kappa > 0 ? apply_truncated(op, u, Vec(x), kappa)
                             : apply_pointwise(op, u, Vec(x));
        csv += csv_line({x, v});
      }
      write_text(out.csv_path.empty() ? out.json_path : out.csv_path, csv);
      return kExitOk;
    }
    if (cmd_tw->parsed()) {
      Domain dom = Domain::interval(dom_a, dom_b);
      TailWeight tw(LevyMeasure(SpectralMeasure::uniform(1, mass), s), dom);
      std::string csv = "x,nu_star\n";
      double span = 3.0 * (dom_b - dom_a);
      for (int i = 0; i < n_points; ++i) {
        double x = dom_a - span + (i + 0.5) * (dom_b - dom_a + 2 * span) / n_points;
        csv += csv_line({x, tw(Vec(x))});
      }
      write_text(out.csv_path.empty() ? out.json_path : out.csv_path, csv);
      return kExitOk;
    }
    if (cmd_nd->parsed()) {
      SpectralMeasure mu =
          config_path.empty()
              ? SpectralMeasure::uniform(1, mass)
              : measure_from_json(load_json_file(config_path));
      double c = nondegeneracy_constant(mu, s);
      json j{{"s", s}, {"constant", c}, {"degenerate", c < 1e-10}};
      write_text(out.json_path, j.dump(2));
      return kExitOk;
    }
    if (cmd_si->parsed()) {
      LevyMeasure levy(SpectralMeasure::uniform(1, mass), s);
      auto r = levy_scaling_identity(levy, t_scale);
      std::string csv = "lhs,rhs,relative_gap\n";
      csv += csv_line({r.lhs, r.rhs, r.relative_gap});
      write_text(out.csv_path.empty() ? out.json_path : out.csv_path, csv);
      return kExitOk;
    }
    if (cmd_solve->parsed()) {
      StableOperator op(s, SpectralMeasure::uniform(1, mass));
      json fj = {{"name", "constant"}, {"value", 1.0}};
      if (function_name == "bump")
        fj = {{"name", "bump"},
              {"center", {0.5 * (dom_a + dom_b)}},
              {"width", 0.25 * (dom_b - dom_a)}};
      SampledFunction f = function_from_json(fj, s);
      Mesh1D mesh = Mesh1D::graded(dom_a, dom_b, cells);
      DirichletSolution sol =
          solve_dirichlet(op, mesh, [&f](double x) { return f(Vec(x)); });
      DecayFit fit = boundary_decay_fit(sol);
      json j{{"cells", cells},
             {"galerkin_residual", sol.galerkin_residual},
             {"energy", sol.energy_value},
             {"decay_exponent", fit.exponent},
             {"decay_points_used", fit.points_used}};
      write_text(out.json_path, j.dump(2));
      if (!out.csv_path.empty()) {
        std::string csv = "x,u\n";
        for (size_t k = 0; k < mesh.nodes.size(); ++k)
          csv += csv_line({mesh.nodes[k], sol.values[k]});
        write_text(out.csv_path, csv);
      }
      return kExitOk;
    }
    // scenario-driven commands
    CLI::App* cmd = cmd_verify->parsed()
                        ? cmd_verify
                        : (cmd_replay->parsed() ? cmd_replay : cmd_classical);
    (void)cmd;
    Scenario sc =
        !scenario_name.empty()
            ? make_scenario(scenario_name)
            : scenario_from_config(load_json_file(config_path));
    if (cmd_classical->parsed()) sc.mode = "classical";
    return run_scenario(sc, out, cmd_replay->parsed(), {});
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
}
