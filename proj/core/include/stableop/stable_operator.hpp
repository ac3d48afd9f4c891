#pragma once

#include <stdexcept>

#include "stableop/sampled_function.hpp"
#include "stableop/spectral.hpp"

namespace stableop {

struct RegularityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TruncationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Radial/panel quadrature controls for operator evaluation. The panel
/// layout is deterministic (depends on breakpoints and these knobs only),
/// so evaluations at fixed inputs are bit-reproducible.
struct QuadratureConfig {
  double inner_cutoff = 0.0;      // 0 = auto: half distance to nearest kink
  double truncation_radius = 1e3; // outer cutoff for non-compact functions
  int per_panel_order = 8;        // Gauss order per dyadic panel
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;
  int max_refinements = 48;       // geometric grading levels per endpoint

  void validate() const {
    if (!(truncation_radius > 0) || per_panel_order < 2 ||
        max_refinements < 4 || !(abs_tol > 0) || !(rel_tol > 0) ||
        abs_tol > 1e-3 || rel_tol > 1e-3)
      throw std::invalid_argument("bad quadrature config");
  }
};

/// The pair (s, mu) plus quadrature configuration.
struct StableOperator {
  double s;
  SpectralMeasure mu;
  QuadratureConfig quad{};

  StableOperator(double s_, SpectralMeasure mu_, QuadratureConfig q = {})
      : s(s_), mu(std::move(mu_)), quad(q) {
    if (!(s > 0 && s < 1)) throw std::invalid_argument("s must be in (0,1)");
    quad.validate();
  }
};

/// Truncated operator: jumps of size |r| >= kappa only.
double apply_truncated(const StableOperator& op, const SampledFunction& u,
                       const Vec& x, double kappa);

/// Principal-value evaluation via the symmetrized double difference.
/// Requires u tagged C2 near x (or C1 with s < 1/2); throws RegularityError
/// otherwise.
double apply_pointwise(const StableOperator& op, const SampledFunction& u,
                       const Vec& x);

struct PairingResult {
  double value;
  double exterior_tail_bound;  // truncation control for the exterior part
};

/// Distributional pairing (u, A_s eta)_{L^2(R^d)} with eta smooth and
/// compactly supported in omega; split into interior and exterior parts.
PairingResult pairing(const StableOperator& op, const SampledFunction& u,
                      const SampledFunction& eta, const Domain& omega);

/// Bilinear energy form excluding the exterior-exterior region. Requires
/// d = 1 and both factors compactly supported (one of them inside omega),
/// which makes the exclusion automatic.
double energy(const StableOperator& op, const SampledFunction& u,
              const SampledFunction& v, const Domain& omega);

struct LinfProbe {
  double sup_abs;            // sup over omega of |A_s phi|
  double holder_surrogate;   // sampled C^{2s+alpha} norm surrogate
};

LinfProbe linf_bound_probe(const StableOperator& op, const SampledFunction& phi,
                           double alpha, const Domain& omega);

}  // namespace stableop
