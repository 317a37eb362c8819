#include "heislax/sampling.hpp"

#include <cmath>

namespace heislax {

Vector Sampler::normal_vector(int size) {
  Vector v(size);
  for (int i = 0; i < size; ++i) v(i) = normal();
  return v;
}

Matrix Sampler::normal_matrix(int rows, int cols) {
  Matrix m(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) m(r, c) = normal();
  return m;
}

SymmetricMap Sampler::symmetric(int n) {
  const Matrix r = normal_matrix(2 * n, 2 * n);
  return SymmetricMap(n, 0.5 * (r + r.transpose()));
}

SymmetricMap Sampler::nonsingular_symmetric(int n, double min_abs_det) {
  for (;;) {
    SymmetricMap a = symmetric(n);
    if (std::abs(a.matrix().determinant()) > min_abs_det) return a;
  }
}

SymmetricMap Sampler::positive_definite(int n, double floor) {
  const Matrix r = normal_matrix(2 * n, 2 * n);
  Matrix a = r * r.transpose() / (2.0 * n) + floor * Matrix::Identity(2 * n, 2 * n);
  a = 0.5 * (a + a.transpose());
  return SymmetricMap(n, a);
}

SymmetricMap Sampler::complex_symmetric(int n) {
  const Matrix rb = normal_matrix(n, n);
  const Matrix rc = normal_matrix(n, n);
  const Matrix b = 0.5 * (rb + rb.transpose());
  const Matrix c = 0.5 * (rc - rc.transpose());
  Matrix a(2 * n, 2 * n);
  a << b, c, -c, b;
  return SymmetricMap(n, a);
}

OrbitPoint Sampler::orbit_point(int n, double xnp1) { return OrbitPoint{normal_vector(2 * n), xnp1}; }

OrbitPoint Sampler::orbit_point(int n) {
  const double mag = uniform(0.5, 2.0);
  const double sign = uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0;
  return orbit_point(n, sign * mag);
}

}  // namespace heislax
