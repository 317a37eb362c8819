#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "heislax/dynamics.hpp"

namespace heislax {

/// ||[J Ai, J Aj]||.
double involution_defect(const SymmetricMap& ai, const SymmetricMap& aj);

/// Involution of the induced quadratics on every orbit: [J Ai, J Aj] = 0.
bool involution_test(const SymmetricMap& ai, const SymmetricMap& aj, double tol);

/// {H_i, H_j}(X) on the orbit through X, closed form x_{n+1} (S G^{-1} Ai x_v, Aj x_v)
/// with G the metric on v. For the lb convention this is x_{n+1} (J Ai x_v, Aj x_v).
double poisson_quadratics(const MetricLieAlgebra& g, const SymmetricMap& ai, const SymmetricMap& aj,
                          const OrbitPoint& x);

/// Basis of z(JA)_d = {D : [D, JA] = 0, J D symmetric}, orthonormal in the
/// Frobenius inner product.
std::vector<Derivation> centralizer(const SymmetricMap& a);

struct AbelianFamily {
  bool found = false;
  std::vector<Derivation> members;
  /// "mode-decomposition", "spectral-planes", "generic-cartan" or "none".
  std::string strategy = "none";
  std::string reason;
};

/// n pairwise commuting elements of z(JA)_d with independent induced
/// integrals, or found == false. Deterministic for a given seed.
AbelianFamily abelian_family(const SymmetricMap& a, std::uint64_t seed = 0);

/// g_k(X) = 1/2 (A_k x_v, x_v) [+ x0 x_{n+1}], A_k = sym_of_deriv(D_k).
std::vector<QuadraticFunction> first_integrals(const std::vector<Derivation>& family, Extension ext);

/// max over points of rank of the orbit-restricted differentials, singular
/// values above `threshold` counted.
int differential_rank(const std::vector<QuadraticFunction>& fns, const std::vector<OrbitPoint>& points,
                      double threshold = 1e-8);

enum class Verdict { integrable, undetermined };
std::string to_string(Verdict v);

struct CertificateOptions {
  int samples = 50;
  std::uint64_t seed = 0;
  double commutation_tol = 1e-10;
  double poisson_tol = 1e-8;
  double rank_threshold = 1e-8;
  /// Unset: cross-term for the oscillator convention, trivial for lb.
  std::optional<Extension> extension;
};

struct IntegrabilityCertificate {
  SymmetricMap a;
  Convention convention = Convention::lb;
  std::vector<Derivation> family{};
  std::vector<QuadraticFunction> integrals{};
  Extension extension = Extension::trivial;
  std::string strategy{};
  double commutation_defect = 0.0;
  double poisson_defect = 0.0;
  int rank = 0;
  Verdict verdict = Verdict::undetermined;
  std::uint64_t seed = 0;
  int samples = 0;
};

/// Never reports non-integrability: a failed search yields "undetermined".
IntegrabilityCertificate certificate(const MetricLieAlgebra& g, const CertificateOptions& options = {});

enum class LevelSet { compact, noncompact, empty };
std::string to_string(LevelSet s);

/// Shape of {f_k = c_k for all k} restricted to the v-coordinates.
LevelSet level_set_classify(const std::vector<QuadraticFunction>& integrals, const std::vector<double>& levels);

/// A = [[B, C], [D, E]] in (q, p) blocks: C = -D, B = E, B symmetric
/// (equivalently AJ = JA).
bool complex_symmetric_test(const Matrix& a, double tol = 1e-10);

/// [C_i, B_j] = [C_j, B_i] and [C_i, C_j] = [B_i, B_j].
bool pairwise_test(const Matrix& ai, const Matrix& aj, double tol = 1e-10);

}  // namespace heislax
