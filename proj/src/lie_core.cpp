#include "heislax/lie_core.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace heislax {

namespace {

void require_length(const Vector& v, int dim, const char* what) {
  if (v.size() != dim) {
    throw InvalidArgument(std::string(what) + ": expected length " + std::to_string(dim) +
                          ", got " + std::to_string(v.size()));
  }
}

// Orthonormal basis of the column span of m.
Matrix column_span(const Matrix& m, double rel_tol) {
  if (m.cols() == 0 || m.rows() == 0) return Matrix(m.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  const double cutoff = rel_tol * std::max(1.0, s.size() ? s(0) : 0.0);
  int r = 0;
  while (r < s.size() && s(r) > cutoff) ++r;
  return svd.matrixU().leftCols(r);
}

}  // namespace

LieAlgebra::LieAlgebra(std::vector<std::string> labels, std::vector<double> structure)
    : dim_(static_cast<int>(labels.size())), labels_(std::move(labels)), structure_(std::move(structure)) {
  if (dim_ < 1) throw InvalidArgument("LieAlgebra: dimension must be positive");
  const auto expected = static_cast<std::size_t>(dim_) * dim_ * dim_;
  if (structure_.size() != expected) {
    throw InvalidArgument("LieAlgebra: structure table has " + std::to_string(structure_.size()) +
                          " entries, expected " + std::to_string(expected));
  }
}

LieAlgebra LieAlgebra::abelian(std::vector<std::string> labels) {
  const auto d = labels.size();
  return LieAlgebra(std::move(labels), std::vector<double>(d * d * d, 0.0));
}

LieAlgebra LieAlgebra::from_brackets(std::vector<std::string> labels,
                                     const std::vector<StructureEntry>& brackets) {
  const int d = static_cast<int>(labels.size());
  std::vector<double> table(static_cast<std::size_t>(d) * d * d, 0.0);
  auto at = [d](int i, int j, int k) { return (static_cast<std::size_t>(i) * d + j) * d + k; };
  for (const auto& e : brackets) {
    if (e.i < 0 || e.j < 0 || e.k < 0 || e.i >= d || e.j >= d || e.k >= d) {
      throw InvalidArgument("LieAlgebra: structure index out of range");
    }
    if (e.i == e.j) {
      if (e.value != 0.0) throw InvalidArgument("LieAlgebra: [e_i, e_i] must vanish");
      continue;
    }
    table[at(e.i, e.j, e.k)] = e.value;
    table[at(e.j, e.i, e.k)] = -e.value;
  }
  return LieAlgebra(std::move(labels), std::move(table));
}

std::vector<StructureEntry> LieAlgebra::nonzero_entries() const {
  std::vector<StructureEntry> out;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k)
        if (double v = c(i, j, k); v != 0.0) out.push_back({i, j, k, v});
  return out;
}

LieAlgebra LieAlgebra::with_constant(int i, int j, int k, double value) const {
  if (i < 0 || j < 0 || k < 0 || i >= dim_ || j >= dim_ || k >= dim_) {
    throw InvalidArgument("LieAlgebra: structure index out of range");
  }
  auto table = structure_;
  table[index(i, j, k)] = value;
  return LieAlgebra(labels_, std::move(table));
}

MetricForm::MetricForm(Matrix gram) : gram_(std::move(gram)) {
  if (gram_.rows() != gram_.cols() || gram_.rows() == 0) {
    throw InvalidArgument("MetricForm: gram matrix must be square and nonempty");
  }
  if (gram_ != gram_.transpose()) throw InvalidArgument("MetricForm: gram matrix is not symmetric");
  Eigen::FullPivLU<Matrix> lu(gram_);
  if (std::abs(lu.determinant()) <= 1e-12) {
    throw DegenerateMetric("MetricForm: gram matrix is singular");
  }
  inverse_ = lu.inverse();
}

QuadraticFunction::QuadraticFunction(Matrix quad) : QuadraticFunction(quad, Vector::Zero(quad.rows())) {}

QuadraticFunction::QuadraticFunction(Matrix quad, Vector linear)
    : quad_(std::move(quad)), linear_(std::move(linear)) {
  if (quad_.rows() != quad_.cols()) throw InvalidArgument("QuadraticFunction: matrix must be square");
  if (quad_ != quad_.transpose()) throw InvalidArgument("QuadraticFunction: matrix is not symmetric");
  if (linear_.size() != quad_.rows()) throw InvalidArgument("QuadraticFunction: linear part has wrong length");
}

double QuadraticFunction::operator()(const Vector& x) const {
  require_length(x, dim(), "QuadraticFunction");
  return 0.5 * x.dot(quad_ * x) + linear_.dot(x);
}

Vector QuadraticFunction::differential(const Vector& x) const {
  require_length(x, dim(), "QuadraticFunction");
  return quad_ * x + linear_;
}

Vector bracket(const LieAlgebra& alg, const Vector& x, const Vector& y) {
  const int d = alg.dim();
  require_length(x, d, "bracket");
  require_length(y, d, "bracket");
  Vector out = Vector::Zero(d);
  for (int i = 0; i < d; ++i) {
    if (x(i) == 0.0) continue;
    for (int j = 0; j < d; ++j) {
      const double w = x(i) * y(j);
      if (w == 0.0) continue;
      for (int k = 0; k < d; ++k) out(k) += w * alg.c(i, j, k);
    }
  }
  return out;
}

double jacobi_defect(const LieAlgebra& alg) {
  const int d = alg.dim();
  std::vector<Vector> basis;
  for (int i = 0; i < d; ++i) basis.push_back(Vector::Unit(d, i));
  double worst = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        const Vector& a = basis[i];
        const Vector& b = basis[j];
        const Vector& c = basis[k];
        Vector s = bracket(alg, a, bracket(alg, b, c)) + bracket(alg, b, bracket(alg, c, a)) +
                   bracket(alg, c, bracket(alg, a, b));
        worst = std::max(worst, s.cwiseAbs().maxCoeff());
      }
  return worst;
}

double antisymmetry_defect(const LieAlgebra& alg) {
  const int d = alg.dim();
  double worst = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) worst = std::max(worst, std::abs(alg.c(i, j, k) + alg.c(j, i, k)));
  return worst;
}

Matrix ad_matrix(const LieAlgebra& alg, const Vector& x) {
  const int d = alg.dim();
  require_length(x, d, "ad_matrix");
  Matrix m = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    if (x(i) == 0.0) continue;
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) m(k, j) += x(i) * alg.c(i, j, k);
  }
  return m;
}

double ad_invariance_defect(const LieAlgebra& alg, const MetricForm& metric) {
  const int d = alg.dim();
  if (metric.dim() != d) throw InvalidArgument("ad_invariance_defect: metric dimension mismatch");
  // ad_x skew for the metric  <=>  G ad_x + ad_x^T G = 0; entry (z, y) is the triple (x, y, z).
  double worst = 0.0;
  for (int i = 0; i < d; ++i) {
    const Matrix ad = ad_matrix(alg, Vector::Unit(d, i));
    const Matrix g_ad = metric.gram() * ad;
    worst = std::max(worst, max_abs(g_ad + g_ad.transpose()));
  }
  return worst;
}

Vector gradient(const MetricForm& metric, const QuadraticFunction& f, const Vector& x) {
  if (f.dim() != metric.dim()) throw InvalidArgument("gradient: function and metric dimensions differ");
  return metric.inverse() * f.differential(x);
}

std::vector<int> derived_series(const LieAlgebra& alg) {
  const int d = alg.dim();
  std::vector<int> dims{d};
  Matrix span = Matrix::Identity(d, d);
  while (span.cols() > 0) {
    const int m = static_cast<int>(span.cols());
    Matrix products(d, m * m);
    int col = 0;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) products.col(col++) = bracket(alg, span.col(a), span.col(b));
    Matrix next = column_span(products, 1e-10);
    dims.push_back(static_cast<int>(next.cols()));
    if (next.cols() == span.cols()) break;
    span = std::move(next);
  }
  return dims;
}

Matrix adjoint_exp(const LieAlgebra& alg, const Vector& x, double t) {
  const Matrix generator = t * ad_matrix(alg, x);
  return generator.exp();
}

Matrix null_space(const Matrix& m, double rel_tol) {
  const auto cols = m.cols();
  if (cols == 0) return Matrix(0, 0);
  if (m.rows() == 0) return Matrix::Identity(cols, cols);
  // Pad to at least square so the full V is available from the SVD.
  Matrix padded = m;
  if (padded.rows() < cols) {
    padded.conservativeResize(cols, Eigen::NoChange);
    padded.bottomRows(cols - m.rows()).setZero();
  }
  Eigen::JacobiSVD<Matrix> svd(padded, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double cutoff = rel_tol * std::max(1.0, s(0));
  int r = 0;
  while (r < s.size() && s(r) > cutoff) ++r;
  return svd.matrixV().rightCols(cols - r);
}

int numerical_rank(const Matrix& m, double abs_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  int r = 0;
  while (r < s.size() && s(r) > abs_tol) ++r;
  return r;
}

}  // namespace heislax
