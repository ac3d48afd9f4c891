#pragma once

#include <string>
#include <vector>

#include "stableop/sampled_function.hpp"
#include "stableop/solver.hpp"
#include "stableop/stable_operator.hpp"

namespace stableop {

enum class Verdict { Pass, Fail, Inconclusive };

const char* to_string(Verdict v);

struct LadderRow {
  double eps;
  double value;
};

struct VerifierConfig {
  int n_centers = 5;
  int n_widths = 5;
  std::vector<double> eps_ladder = {0.1, 0.05, 0.025, 0.0125};
  double abs_tol = 1e-6;      // scale-free pairing/conclusion factor
  int interior_grid = 201;
  double exterior_extent = 50.0;
  int exterior_samples = 25;  // per side, geometric spacing
};

struct UltraResult {
  int test_function_count = 0;
  double max_pairing_value = 0;
  double threshold = 0;
  Verdict verdict = Verdict::Inconclusive;
};

struct HypothesisReport {
  UltraResult ultrasubharmonic;                 // condition (1.5)
  int exterior_sample_count = 0;                // condition (1.6)
  double max_exterior_value = 0;
  Verdict exterior_sign = Verdict::Inconclusive;
  std::vector<LadderRow> boundary_ladder;       // condition (1.7)
  Verdict boundary_limit = Verdict::Inconclusive;
  int interior_grid_count = 0;                  // conclusion
  double sup_positive_part = 0;
  double conclusion_tol = 0;
  Verdict conclusion = Verdict::Inconclusive;
  bool internal_inconsistency = false;

  bool hypotheses_pass() const {
    return ultrasubharmonic.verdict == Verdict::Pass &&
           exterior_sign == Verdict::Pass && boundary_limit == Verdict::Pass;
  }
};

/// Default family of nonnegative smooth bumps compactly supported in omega
/// (n_centers x n_widths), d = 1.
std::vector<SampledFunction> default_bump_family(const Domain& omega,
                                                 int n_centers, int n_widths);

/// Max of (u, A_s eta) over the family; pass iff below the scale-adjusted
/// threshold abs_tol * scale(u) * scale(A_s eta) plus truncation slack.
UltraResult check_ultrasubharmonic(const StableOperator& op,
                                   const SampledFunction& u,
                                   const Domain& omega,
                                   const std::vector<SampledFunction>& family,
                                   double abs_tol = 1e-6);

/// Same test applied to the positive part u^+.
UltraResult check_positive_part(const StableOperator& op,
                                const SampledFunction& u, const Domain& omega,
                                const std::vector<SampledFunction>& family,
                                double abs_tol = 1e-6);

/// Ladder of eps^{-s+delta} * int_{dist < eps} u^+ over the interior band.
std::vector<LadderRow> boundary_functional(const SampledFunction& u,
                                           const Domain& omega, double s,
                                           const std::vector<double>& ladder,
                                           double delta = 0.0);

/// Verdict "tends to zero": last < 0.1 * first (trivially pass when the
/// whole ladder is negligible).
Verdict ladder_verdict(const std::vector<LadderRow>& rows, double scale);

/// Runs the three hypothesis checks and the conclusion; an all-pass run
/// whose conclusion fails is flagged as an internal inconsistency.
HypothesisReport verify_max_principle(const StableOperator& op,
                                      const SampledFunction& u,
                                      const Domain& omega,
                                      const VerifierConfig& cfg = {});

struct PipelineStep {
  double eps;
  double v_eps_psi;        // int (u^+ * eta_eps) psi
  double band_integral;    // int_{dist < eps} u^+
  double holder_ratio;     // ||phi_eps||_{C^s} / ||psi||_inf
  double remainder_bound;  // C * eps^{-s} * band_integral
  double solver_residual;
};

struct PipelineTrace {
  std::vector<PipelineStep> steps;
  double convolved_constant = 0;  // from convolved_distance_bound
  bool remainder_vanishes = false;
  bool limsup_nonpositive = false;
};

/// Numerical replay of the Green-function approximation argument on an
/// interval: per eps, solve the subdomain Dirichlet problem for psi, measure
/// the Holder ratio of the coarse solve, and compare int v_eps psi against
/// the remainder bound.
PipelineTrace pipeline_replay(const StableOperator& op,
                              const SampledFunction& u, const Domain& omega,
                              const SampledFunction& psi,
                              const std::vector<double>& ladder,
                              int mesh_cells = 64);

/// Laplacian mode: sub-mean-value property on sampled balls, exponent-1
/// boundary functional, conclusion sup u^+.
HypothesisReport classical_mp_check(const SampledFunction& u,
                                    const Domain& omega,
                                    const VerifierConfig& cfg = {});

}  // namespace stableop
