#pragma once

#include <cmath>

#include "heislax/integrability.hpp"
#include "heislax/sampling.hpp"

namespace testing {

using heislax::Matrix;
using heislax::Vector;

inline Vector unit(int dim, int i) { return Vector::Unit(dim, i); }

inline double diff(const Matrix& a, const Matrix& b) { return heislax::max_abs(a - b); }

inline double diff(const heislax::OrbitPoint& a, const heislax::OrbitPoint& b) {
  return std::max((a.xv - b.xv).cwiseAbs().maxCoeff(), std::abs(a.xnp1 - b.xnp1));
}

inline Matrix diag(std::initializer_list<double> d) {
  Vector v(static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (double x : d) v(i++) = x;
  return v.asDiagonal();
}

/// Projector onto the (q_k, p_k) plane of R^{2n}, k zero-based.
inline Matrix mode_projector(int n, int k) {
  Matrix p = Matrix::Zero(2 * n, 2 * n);
  p(k, k) = 1.0;
  p(n + k, n + k) = 1.0;
  return p;
}

/// diag(I, -I): n uncoupled inverse pendula.
inline heislax::SymmetricMap pendula(int n) {
  Matrix a = Matrix::Identity(2 * n, 2 * n);
  a.bottomRightCorner(n, n) *= -1.0;
  return heislax::SymmetricMap(n, a);
}

inline heislax::OrbitPoint point(std::initializer_list<double> xv, double xnp1) {
  Vector v(static_cast<Eigen::Index>(xv.size()));
  Eigen::Index i = 0;
  for (double x : xv) v(i++) = x;
  return heislax::OrbitPoint{v, xnp1};
}

}  // namespace testing
