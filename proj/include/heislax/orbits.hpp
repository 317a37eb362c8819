#pragma once

#include "heislax/extension.hpp"

namespace heislax {

/// Point of g_+^perp: X = sum(x_i X_i + y_i Y_i) + x_{n+1} X_{n+1}, x0 = 0.
/// Also used for tangent vectors along orbits.
struct OrbitPoint {
  Vector xv;
  double xnp1 = 0.0;
};

/// Element x0 X0 + U_v of g_- = R X0 + v.
struct GMinusElement {
  double x0 = 0.0;
  Vector uv;
};

enum class Extension { trivial, cross_term };

/// Coordinates of the orbit point in g (x0 = 0).
Vector embed(const MetricLieAlgebra& g, const OrbitPoint& x);
Vector embed(const MetricLieAlgebra& g, const GMinusElement& u);

/// x_{n+1}(V) S U_v; the X0 and X_{n+1} components vanish.
Vector coadjoint_inf(const MetricLieAlgebra& g, const GMinusElement& u, const OrbitPoint& v);

/// 2n when x_{n+1} != 0, otherwise 0 (fixed point).
int orbit_dim(const MetricLieAlgebra& g, const OrbitPoint& v);

/// Orbits with x_{n+1} != 0 are labelled by x_{n+1}; points with x_{n+1} = 0
/// are singleton orbits.
bool same_orbit(const OrbitPoint& v, const OrbitPoint& w);

/// Symplectic form omega_X(U~, V~) = <X, [U, V]> = x_{n+1} b(S U_v, V_v).
double kks(const MetricLieAlgebra& g, const OrbitPoint& x, const GMinusElement& u, const GMinusElement& v);

/// Projection onto g_- along g_+ = R X_{n+1} (coordinate projection).
Vector project_minus(const MetricLieAlgebra& g, const Vector& z);

/// {F, G}(X) = <X, [grad f_-(X), grad h_-(X)]>.
double poisson_orbit(const MetricLieAlgebra& g, const QuadraticFunction& f, const QuadraticFunction& h,
                     const OrbitPoint& x);

/// X_H(X) = -pi_{g_+^perp}([grad f_-(X), X]).
OrbitPoint ham_vf(const MetricLieAlgebra& g, const QuadraticFunction& f, const OrbitPoint& x);

/// f(X) = 1/2 <X, X>.
QuadraticFunction metric_quadratic(const MetricLieAlgebra& g);

/// Extension of 1/2 (A_k x_v, x_v) to g, optionally with + x0 x_{n+1}.
QuadraticFunction extend_quadratic(const MetricLieAlgebra& g, const Matrix& ak, Extension ext);
QuadraticFunction extend_quadratic(int n, const Matrix& ak, Extension ext);

}  // namespace heislax
