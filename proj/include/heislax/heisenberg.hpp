#pragma once

#include "heislax/lie_core.hpp"

namespace heislax {

/// Symmetric 2n x 2n matrix A; H(x) = 1/2 (Ax, x) and b(X, Y) = (AX, Y).
/// Basis order on R^{2n} is (q_1..q_n, p_1..p_n) = (X_1..X_n, Y_1..Y_n).
class SymmetricMap {
 public:
  /// Throws InvalidArgument if A is not 2n x 2n or not symmetric (tolerance
  /// 1e-14 relative to max(1, max|A|)). The stored matrix is symmetrized.
  SymmetricMap(int n, Matrix a);
  /// n inferred from the (even) matrix size.
  explicit SymmetricMap(Matrix a);

  int n() const { return n_; }
  const Matrix& matrix() const { return a_; }

  bool nonsingular(double tol = 1e-12) const;

 private:
  int n_;
  Matrix a_;
};

/// Derivation of h_n acting trivially on the center, stored as its 2n x 2n
/// block on v = span{X_i, Y_i}. The zero action on X_0 is implicit.
class Derivation {
 public:
  /// Throws NotADerivation when J D is not symmetric within 1e-10
  /// (relative to max(1, max|D|)).
  Derivation(int n, Matrix d);

  int n() const { return n_; }
  const Matrix& matrix() const { return d_; }

 private:
  int n_;
  Matrix d_;
};

LieAlgebra heisenberg(int n);

/// [[0, -I], [I, 0]].
Matrix standard_J(int n);

/// D = J A.
Derivation deriv_of_sym(const SymmetricMap& a);

/// A = -J D, the inverse of deriv_of_sym.
SymmetricMap sym_of_deriv(const Derivation& d);

/// ||J D - (J D)^T||, zero iff D is in the derivation algebra.
double is_derivation_defect(const Matrix& d);

/// True iff D is skew (||D + D^T|| <= tol), i.e. D generates isometries of
/// H_n with its canonical inner product.
bool is_skew_derivation(const Derivation& d, double tol);

/// Matrix commutator [a, b] = ab - ba.
inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

}  // namespace heislax
