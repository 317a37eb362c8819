#pragma once

#include <vector>

#include "heislax/orbits.hpp"

namespace heislax {

enum class Method { exact, rk4 };

std::string to_string(Method m);
Method method_from_string(const std::string& s);

struct Trajectory {
  std::vector<double> times;
  std::vector<OrbitPoint> states;
  Method method = Method::exact;
};

enum class BasisOrder {
  /// (X0, X_1..X_n, Y_1..Y_n, X_{n+1}); L = ad_X, M = ad_{x_{n+1} X_{n+1}}.
  internal,
  /// (X_1, Y_1, .., X_n, Y_n, *, *) in the classical display layout: the v-block of
  /// ad_X, last column x_v and second-to-last row (-y_1/2, x_1/2, ...).
  interleaved,
};

struct LaxPair {
  Matrix l;
  Matrix m;
  BasisOrder order = BasisOrder::internal;
};

struct Factorization {
  /// Ad(g_+(t)) = exp(t x_{n+1}^0 ad_{X_{n+1}}).
  Matrix plus_factor;
  /// Ad(g_-(t)) = Ad(g_+(t))^{-1} exp(t ad_{grad f(X0)}).
  Matrix minus_factor;
  OrbitPoint state;
};

/// dx/dt = [grad f_+(x), x] = x_{n+1} S x_v.
OrbitPoint lax_rhs(const MetricLieAlgebra& g, const OrbitPoint& x);

/// x_v(t) = exp(t x_{n+1} S) x_v, x_{n+1}(t) = x_{n+1}.
OrbitPoint flow_exact(const MetricLieAlgebra& g, const OrbitPoint& x0, double t);

/// Samples on the grid 0, dt, 2dt, .., T (last step shortened to land on T).
/// Throws InvalidArgument for dt <= 0 or T < 0 and DivergenceError when the
/// RK4 state stops being finite.
Trajectory integrate(const MetricLieAlgebra& g, const OrbitPoint& x0, double T, double dt, Method method);

LaxPair lax_matrices(const MetricLieAlgebra& g, const OrbitPoint& x, BasisOrder order = BasisOrder::internal);

/// max_k max_t |tr L(t)^k - tr L(0)^k| for k = 1..2n+2, L = ad_X.
double isospectral_drift(const Trajectory& traj, const MetricLieAlgebra& g);

Factorization solve_by_factorization(const MetricLieAlgebra& g, const OrbitPoint& x0, double t);

/// ||(g_- - I)^3||, zero when the factor is the adjoint action of an element
/// of the nilpotent ideal g_-.
double minus_factor_nilpotency_defect(const Factorization& f);

std::vector<double> energy_series(const MetricLieAlgebra& g, const Trajectory& traj, const QuadraticFunction& f);

/// Permutation from internal order to the interleaved order used by the
/// interleaved Lax display: row r of P picks internal index perm[r].
std::vector<int> interleaved_permutation(int n);

}  // namespace heislax
