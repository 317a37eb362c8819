#include "heislax/heisenberg.hpp"

#include <algorithm>
#include <cmath>

namespace heislax {

namespace {

int half_size(const Matrix& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0 || a.rows() % 2 != 0) {
    throw InvalidArgument(std::string(what) + ": expected a nonempty 2n x 2n matrix");
  }
  return static_cast<int>(a.rows() / 2);
}

double scale_of(const Matrix& a) { return std::max(1.0, max_abs(a)); }

}  // namespace

SymmetricMap::SymmetricMap(int n, Matrix a) : n_(n), a_(std::move(a)) {
  if (n < 1) throw InvalidArgument("SymmetricMap: n must be >= 1");
  if (a_.rows() != 2 * n || a_.cols() != 2 * n) {
    throw InvalidArgument("SymmetricMap: matrix must be " + std::to_string(2 * n) + " x " +
                          std::to_string(2 * n));
  }
  if (max_abs(a_ - a_.transpose()) > 1e-14 * scale_of(a_)) {
    throw InvalidArgument("SymmetricMap: matrix is not symmetric");
  }
  a_ = 0.5 * (a_ + a_.transpose()).eval();
}

SymmetricMap::SymmetricMap(Matrix a) : SymmetricMap(half_size(a, "SymmetricMap"), Matrix(a)) {}

bool SymmetricMap::nonsingular(double tol) const {
  return std::abs(Eigen::FullPivLU<Matrix>(a_).determinant()) > tol;
}

Derivation::Derivation(int n, Matrix d) : n_(n), d_(std::move(d)) {
  if (n < 1) throw InvalidArgument("Derivation: n must be >= 1");
  if (d_.rows() != 2 * n || d_.cols() != 2 * n) {
    throw InvalidArgument("Derivation: matrix must be " + std::to_string(2 * n) + " x " +
                          std::to_string(2 * n));
  }
  if (is_derivation_defect(d_) > 1e-10 * scale_of(d_)) {
    throw NotADerivation("Derivation: J D is not symmetric, D does not preserve the Heisenberg bracket");
  }
}

LieAlgebra heisenberg(int n) {
  if (n < 1) throw InvalidArgument("heisenberg: n must be >= 1");
  std::vector<std::string> labels{"X0"};
  for (int i = 1; i <= n; ++i) labels.push_back("X" + std::to_string(i));
  for (int i = 1; i <= n; ++i) labels.push_back("Y" + std::to_string(i));
  std::vector<StructureEntry> brackets;
  for (int i = 1; i <= n; ++i) brackets.push_back({i, n + i, 0, 1.0});
  return LieAlgebra::from_brackets(std::move(labels), brackets);
}

Matrix standard_J(int n) {
  if (n < 1) throw InvalidArgument("standard_J: n must be >= 1");
  Matrix j = Matrix::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = -Matrix::Identity(n, n);
  j.bottomLeftCorner(n, n) = Matrix::Identity(n, n);
  return j;
}

Derivation deriv_of_sym(const SymmetricMap& a) {
  return Derivation(a.n(), standard_J(a.n()) * a.matrix());
}

SymmetricMap sym_of_deriv(const Derivation& d) {
  Matrix a = -standard_J(d.n()) * d.matrix();
  // J D is symmetric up to the tolerance Derivation admits; drop the residue.
  Matrix sym = 0.5 * (a + a.transpose());
  return SymmetricMap(d.n(), std::move(sym));
}

double is_derivation_defect(const Matrix& d) {
  const int n = half_size(d, "is_derivation_defect");
  const Matrix jd = standard_J(n) * d;
  return max_abs(jd - jd.transpose());
}

bool is_skew_derivation(const Derivation& d, double tol) {
  return max_abs(d.matrix() + d.matrix().transpose()) <= tol;
}

}  // namespace heislax
