#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "heislax/error.hpp"

namespace heislax {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// One entry of a sparse structure-constant list: [e_i, e_j] has coefficient
/// `value` on e_k.
struct StructureEntry {
  int i = 0;
  int j = 0;
  int k = 0;
  double value = 0.0;
};

/// Finite-dimensional real Lie algebra given by dense structure constants
/// c(i, j, k) over an ordered basis: [e_i, e_j] = sum_k c(i, j, k) e_k.
///
/// The constructor stores the constants as given. Constructors of named
/// algebras (heisenberg, double_extend, ...) only ever produce antisymmetric
/// tables satisfying Jacobi; arbitrary tables are accepted so that the defect
/// measures below have something to measure.
class LieAlgebra {
 public:
  LieAlgebra(std::vector<std::string> labels, std::vector<double> structure);

  /// Abelian algebra with the given labels.
  static LieAlgebra abelian(std::vector<std::string> labels);

  /// Builds the table from entries (i < j or not) and fills the antisymmetric
  /// partner c(j, i, k) = -c(i, j, k) for each one.
  static LieAlgebra from_brackets(std::vector<std::string> labels,
                                  const std::vector<StructureEntry>& brackets);

  int dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }
  double c(int i, int j, int k) const { return structure_[index(i, j, k)]; }
  const std::vector<double>& structure() const { return structure_; }

  /// Nonzero entries, both orientations, in (i, j, k) lexicographic order.
  std::vector<StructureEntry> nonzero_entries() const;

  /// Copy with a single constant overwritten (no antisymmetric fill).
  LieAlgebra with_constant(int i, int j, int k, double value) const;

 private:
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * dim_ + j) * dim_ + k;
  }

  int dim_;
  std::vector<std::string> labels_;
  std::vector<double> structure_;
};

/// Symmetric nondegenerate bilinear form, <e_i, e_j> = gram(i, j).
class MetricForm {
 public:
  /// Throws InvalidArgument if gram is not exactly symmetric and
  /// DegenerateMetric if |det gram| <= 1e-12.
  explicit MetricForm(Matrix gram);

  int dim() const { return static_cast<int>(gram_.rows()); }
  const Matrix& gram() const { return gram_; }
  const Matrix& inverse() const { return inverse_; }
  double pair(const Vector& x, const Vector& y) const { return x.dot(gram_ * y); }

 private:
  Matrix gram_;
  Matrix inverse_;
};

/// f(X) = 1/2 X^T Q X + c^T X in basis coordinates. The linear part is empty
/// for genuine quadratics and is only used for linear invariants such as
/// X -> <X, X0>.
class QuadraticFunction {
 public:
  explicit QuadraticFunction(Matrix quad);
  QuadraticFunction(Matrix quad, Vector linear);

  int dim() const { return static_cast<int>(quad_.rows()); }
  const Matrix& quad() const { return quad_; }
  const Vector& linear() const { return linear_; }

  double operator()(const Vector& x) const;
  /// Euclidean differential df_x as a coefficient vector.
  Vector differential(const Vector& x) const;

 private:
  Matrix quad_;
  Vector linear_;
};

Vector bracket(const LieAlgebra& alg, const Vector& x, const Vector& y);

/// max over basis triples of the Jacobi cyclic sum, sup norm.
double jacobi_defect(const LieAlgebra& alg);

/// max |c(i,j,k) + c(j,i,k)|.
double antisymmetry_defect(const LieAlgebra& alg);

/// Matrix of ad_x, so that ad_matrix(x) * y == bracket(x, y).
Matrix ad_matrix(const LieAlgebra& alg, const Vector& x);

/// max over basis triples of |<[x,y],z> + <y,[x,z]>|.
double ad_invariance_defect(const LieAlgebra& alg, const MetricForm& metric);

/// Metric gradient: <grad f(x), y> = df_x(y), i.e. gram^{-1} (Q x + c).
Vector gradient(const MetricForm& metric, const QuadraticFunction& f, const Vector& x);

/// Dimensions of D^0 = g, D^{k+1} = [D^k, D^k], stopping at 0 or when the
/// dimension stabilizes. Solvable iff the last entry is 0.
std::vector<int> derived_series(const LieAlgebra& alg);

/// exp(t ad_x), the adjoint representation of exp(t x).
Matrix adjoint_exp(const LieAlgebra& alg, const Vector& x, double t);

/// Max-abs entry; the norm used for every matrix defect in this library.
inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

/// Orthonormal basis (columns) of the null space of `m`, singular values
/// below rel_tol * max(1, sigma_max) are treated as zero.
Matrix null_space(const Matrix& m, double rel_tol = 1e-10);

/// Numerical rank with absolute singular-value threshold.
int numerical_rank(const Matrix& m, double abs_tol);

}  // namespace heislax
