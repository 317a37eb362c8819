#include "heislax/orbits.hpp"

namespace heislax {

namespace {

void check_point(const MetricLieAlgebra& g, const Vector& xv, const char* what) {
  if (xv.size() != 2 * g.n()) {
    throw InvalidArgument(std::string(what) + ": expected a v-component of length " + std::to_string(2 * g.n()));
  }
}

}  // namespace

Vector embed(const MetricLieAlgebra& g, const OrbitPoint& x) {
  check_point(g, x.xv, "embed");
  Vector out = Vector::Zero(g.dim());
  out.segment(g.v_begin(), 2 * g.n()) = x.xv;
  out(g.xnp1_index()) = x.xnp1;
  return out;
}

Vector embed(const MetricLieAlgebra& g, const GMinusElement& u) {
  check_point(g, u.uv, "embed");
  Vector out = Vector::Zero(g.dim());
  out(MetricLieAlgebra::x0_index()) = u.x0;
  out.segment(g.v_begin(), 2 * g.n()) = u.uv;
  return out;
}

Vector coadjoint_inf(const MetricLieAlgebra& g, const GMinusElement& u, const OrbitPoint& v) {
  check_point(g, u.uv, "coadjoint_inf");
  check_point(g, v.xv, "coadjoint_inf");
  return v.xnp1 * (g.s() * u.uv);
}

int orbit_dim(const MetricLieAlgebra& g, const OrbitPoint& v) { return v.xnp1 != 0.0 ? 2 * g.n() : 0; }

bool same_orbit(const OrbitPoint& v, const OrbitPoint& w) {
  if (v.xnp1 == 0.0 || w.xnp1 == 0.0) return v.xnp1 == w.xnp1 && v.xv == w.xv;
  return v.xnp1 == w.xnp1;
}

double kks(const MetricLieAlgebra& g, const OrbitPoint& x, const GMinusElement& u, const GMinusElement& v) {
  check_point(g, u.uv, "kks");
  check_point(g, v.uv, "kks");
  return x.xnp1 * (g.s() * u.uv).dot(g.a().matrix() * v.uv);
}

Vector project_minus(const MetricLieAlgebra& g, const Vector& z) {
  Vector out = z;
  out(g.xnp1_index()) = 0.0;
  return out;
}

double poisson_orbit(const MetricLieAlgebra& g, const QuadraticFunction& f, const QuadraticFunction& h,
                     const OrbitPoint& x) {
  const Vector p = embed(g, x);
  const Vector df = project_minus(g, gradient(g.metric(), f, p));
  const Vector dh = project_minus(g, gradient(g.metric(), h, p));
  return g.metric().pair(p, bracket(g.alg(), df, dh));
}

OrbitPoint ham_vf(const MetricLieAlgebra& g, const QuadraticFunction& f, const OrbitPoint& x) {
  const Vector p = embed(g, x);
  const Vector df = project_minus(g, gradient(g.metric(), f, p));
  const Vector z = -bracket(g.alg(), df, p);
  // pi onto g_+^perp along g_-^perp = R X0: drop the X0 coordinate.
  return OrbitPoint{z.segment(g.v_begin(), 2 * g.n()), z(g.xnp1_index())};
}

QuadraticFunction metric_quadratic(const MetricLieAlgebra& g) { return QuadraticFunction(g.metric().gram()); }

QuadraticFunction extend_quadratic(int n, const Matrix& ak, Extension ext) {
  if (ak.rows() != 2 * n || ak.cols() != 2 * n) {
    throw InvalidArgument("extend_quadratic: expected a 2n x 2n block");
  }
  const int d = 2 * n + 2;
  Matrix q = Matrix::Zero(d, d);
  q.block(1, 1, 2 * n, 2 * n) = ak;
  if (ext == Extension::cross_term) q(0, d - 1) = q(d - 1, 0) = 1.0;
  return QuadraticFunction(std::move(q));
}

QuadraticFunction extend_quadratic(const MetricLieAlgebra& g, const Matrix& ak, Extension ext) {
  return extend_quadratic(g.n(), ak, ext);
}

}  // namespace heislax
