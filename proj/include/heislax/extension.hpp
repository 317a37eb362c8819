#pragma once

#include <optional>
#include <string>
#include <vector>

#include "heislax/heisenberg.hpp"

namespace heislax {

/// Orientation of the extending derivation.
///  - lb:         S = J A, brackets [U,V] = b(JAU, V) X0, [X_{n+1}, U] = JAU.
///  - oscillator: A = Id and S = -J, giving [X_{n+1}, X_i] = -Y_i,
///                [X_{n+1}, Y_i] = X_i (time reversal of the lb algebra of Id).
enum class Convention { lb, oscillator };

std::string to_string(Convention c);
Convention convention_from_string(const std::string& s);

/// Result of the general double extension R Z + b + R T.
struct DoubleExtension {
  LieAlgebra alg;
  MetricForm metric;
};

/// Index bookkeeping of g = g_+ (+) g_- and g = g_+^perp (+) g_-^perp, with
/// the residuals of <g_+, g_+^perp> and <g_-, g_-^perp>.
struct Splitting {
  std::vector<int> g_minus;       // X0, X_i, Y_i
  std::vector<int> g_plus;        // X_{n+1}
  std::vector<int> g_plus_perp;   // X_i, Y_i, X_{n+1}
  std::vector<int> g_minus_perp;  // X0
  double plus_residual = 0.0;
  double minus_residual = 0.0;
};

/// Solvable metric Lie algebra g = R X0 + v + R X_{n+1}, basis order
/// (X0, X_1..X_n, Y_1..Y_n, X_{n+1}).
class MetricLieAlgebra {
 public:
  MetricLieAlgebra(LieAlgebra alg, MetricForm metric, SymmetricMap a, Matrix s, Convention convention);

  int n() const { return a_.n(); }
  int dim() const { return alg_.dim(); }
  const LieAlgebra& alg() const { return alg_; }
  const MetricForm& metric() const { return metric_; }
  /// Metric restricted to v: b(X, Y) = (AX, Y).
  const SymmetricMap& a() const { return a_; }
  /// ad_{X_{n+1}} restricted to v.
  const Matrix& s() const { return s_; }
  Convention convention() const { return convention_; }

  static constexpr int x0_index() { return 0; }
  int v_begin() const { return 1; }
  int xnp1_index() const { return 2 * n() + 1; }

  /// Same bookkeeping, structure table replaced (used for fault injection).
  MetricLieAlgebra with_algebra(LieAlgebra alg) const;

 private:
  LieAlgebra alg_;
  MetricForm metric_;
  SymmetricMap a_;
  Matrix s_;
  Convention convention_;
};

/// Double extension of (b, phi) by a phi-skew derivation S. Basis order is
/// (Z, b_1..b_m, T). Throws InvalidArgument if S is not phi-skew, is not a
/// derivation of the base, or phi is not ad-invariant on the base.
DoubleExtension double_extend(int base_dim, const MetricForm& phi, const LieAlgebra& base, const Matrix& s);

/// Double extension of (R^{2n}, b) by JA. Throws InvalidArgument for singular A.
MetricLieAlgebra from_symmetric(const SymmetricMap& a);

/// Oscillator algebra: double extension of (R^{2n}, canonical) by S = -J.
MetricLieAlgebra oscillator(int n);

Splitting splitting(const MetricLieAlgebra& g);

}  // namespace heislax
