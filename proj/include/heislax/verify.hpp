#pragma once

#include <cstdint>

#include "heislax/serialization.hpp"

namespace heislax {

struct VerifyOptions {
  std::uint64_t seed = 0;
  int samples = 20;
  double horizon = 2.0;
  double dt = 1e-3;
  double structure_tol = 1e-12;
  double flow_tol = 1e-10;
  double rk4_tol = 1e-6;
  double rk4_isospectral_tol = 1e-8;
  double bracket_tol = 1e-10;
  double aks_tol = 1e-12;
};

/// Runs the invariant suite on g. Report layout:
/// {"all_pass", "seed", "n", "convention", "checks": [{"name", "value", "tol", "pass"}]}.
/// Flow checks are relative to max(1, |state|^2) or the size of the traced powers.
Json verify(const MetricLieAlgebra& g, const VerifyOptions& options = {});

/// Adds `delta` to the single constant c[X_{n+1}][X_1][X_1] without touching
/// its antisymmetric partner, breaking antisymmetry, Jacobi and ad-invariance.
MetricLieAlgebra perturb(const MetricLieAlgebra& g, double delta);

}  // namespace heislax
