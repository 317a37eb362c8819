#pragma once

#include <cstdint>
#include <random>

#include "heislax/orbits.hpp"

namespace heislax {

/// Seeded source of random test data: symmetric maps, orbit points, times.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

  Vector normal_vector(int size);
  Matrix normal_matrix(int rows, int cols);

  /// (R + R^T) / 2 with standard normal R; exactly symmetric.
  SymmetricMap symmetric(int n);
  /// Symmetric with |det| bounded away from zero (resampled otherwise).
  SymmetricMap nonsingular_symmetric(int n, double min_abs_det = 1e-3);
  /// R R^T / (2n) + floor Id: positive definite, so the flow of J A is bounded.
  SymmetricMap positive_definite(int n, double floor = 0.25);
  /// Complex-linear symmetric map [[B, C], [-C, B]], B symmetric, C skew.
  SymmetricMap complex_symmetric(int n);

  /// Normal v-part, x_{n+1} = xnp1.
  OrbitPoint orbit_point(int n, double xnp1);
  /// Normal v-part, |x_{n+1}| uniform in [0.5, 2] with random sign.
  OrbitPoint orbit_point(int n);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace heislax
