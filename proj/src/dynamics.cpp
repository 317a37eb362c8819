#include "heislax/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace heislax {

std::string to_string(Method m) { return m == Method::exact ? "exact" : "rk4"; }

Method method_from_string(const std::string& s) {
  if (s == "exact") return Method::exact;
  if (s == "rk4") return Method::rk4;
  throw InvalidArgument("unknown method '" + s + "' (expected exact or rk4)");
}

OrbitPoint lax_rhs(const MetricLieAlgebra& g, const OrbitPoint& x) {
  if (x.xv.size() != 2 * g.n()) throw InvalidArgument("lax_rhs: wrong state length");
  return OrbitPoint{x.xnp1 * (g.s() * x.xv), 0.0};
}

OrbitPoint flow_exact(const MetricLieAlgebra& g, const OrbitPoint& x0, double t) {
  if (x0.xv.size() != 2 * g.n()) throw InvalidArgument("flow_exact: wrong state length");
  if (t == 0.0 || x0.xnp1 == 0.0) return x0;
  const Matrix propagator = (t * x0.xnp1 * g.s()).exp();
  return OrbitPoint{propagator * x0.xv, x0.xnp1};
}

namespace {

OrbitPoint rk4_step(const MetricLieAlgebra& g, const OrbitPoint& x, double h) {
  // x_{n+1} has zero velocity, so only the v-part is advanced.
  const Matrix a = x.xnp1 * g.s();
  const Vector k1 = a * x.xv;
  const Vector k2 = a * (x.xv + 0.5 * h * k1);
  const Vector k3 = a * (x.xv + 0.5 * h * k2);
  const Vector k4 = a * (x.xv + h * k3);
  return OrbitPoint{x.xv + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4), x.xnp1};
}

}  // namespace

Trajectory integrate(const MetricLieAlgebra& g, const OrbitPoint& x0, double T, double dt, Method method) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("integrate: dt must be positive");
  if (!(T >= 0.0) || !std::isfinite(T)) throw InvalidArgument("integrate: T must be non-negative");
  if (x0.xv.size() != 2 * g.n()) throw InvalidArgument("integrate: wrong state length");

  Trajectory traj;
  traj.method = method;
  traj.times.push_back(0.0);
  traj.states.push_back(x0);
  if (T == 0.0) return traj;

  const auto steps = static_cast<long>(std::ceil(T / dt - 1e-9));
  OrbitPoint state = x0;
  double t = 0.0;
  for (long k = 1; k <= steps; ++k) {
    const double next = (k == steps) ? T : static_cast<double>(k) * dt;
    if (method == Method::rk4) {
      state = rk4_step(g, state, next - t);
      if (!state.xv.allFinite()) {
        throw DivergenceError("integrate: state became non-finite at t = " + std::to_string(next));
      }
    } else {
      state = flow_exact(g, x0, next);
      if (!state.xv.allFinite()) {
        throw DivergenceError("integrate: exact flow overflowed at t = " + std::to_string(next));
      }
    }
    t = next;
    traj.times.push_back(t);
    traj.states.push_back(state);
  }
  return traj;
}

std::vector<int> interleaved_permutation(int n) {
  std::vector<int> perm;
  for (int i = 1; i <= n; ++i) {
    perm.push_back(i);
    perm.push_back(n + i);
  }
  perm.push_back(0);
  perm.push_back(2 * n + 1);
  return perm;
}

LaxPair lax_matrices(const MetricLieAlgebra& g, const OrbitPoint& x, BasisOrder order) {
  const int n = g.n();
  const int d = g.dim();
  if (order == BasisOrder::internal) {
    const Vector p = embed(g, x);
    Vector plus = Vector::Zero(d);
    plus(g.xnp1_index()) = x.xnp1;
    return LaxPair{ad_matrix(g.alg(), p), ad_matrix(g.alg(), plus), order};
  }

  if (x.xv.size() != 2 * n) throw InvalidArgument("lax_matrices: wrong state length");
  const auto perm = interleaved_permutation(n);
  const Matrix block = x.xnp1 * g.s();
  const Vector jx = standard_J(n) * x.xv;
  Matrix m = Matrix::Zero(d, d);
  Matrix l = Matrix::Zero(d, d);
  for (int r = 0; r < 2 * n; ++r) {
    const int vr = perm[r] - 1;
    for (int c = 0; c < 2 * n; ++c) m(r, c) = block(vr, perm[c] - 1);
    l(r, d - 1) = x.xv(vr);
    l(d - 2, r) = 0.5 * jx(vr);
  }
  l.topLeftCorner(2 * n, 2 * n) = m.topLeftCorner(2 * n, 2 * n);
  return LaxPair{l, m, order};
}

double isospectral_drift(const Trajectory& traj, const MetricLieAlgebra& g) {
  if (traj.states.empty()) throw InvalidArgument("isospectral_drift: empty trajectory");
  const int powers = g.dim();
  auto traces = [&](const OrbitPoint& x) {
    const Matrix l = lax_matrices(g, x).l;
    std::vector<double> out;
    Matrix p = Matrix::Identity(l.rows(), l.cols());
    for (int k = 1; k <= powers; ++k) {
      p = p * l;
      out.push_back(p.trace());
    }
    return out;
  };
  const auto ref = traces(traj.states.front());
  double worst = 0.0;
  for (const auto& s : traj.states) {
    const auto tr = traces(s);
    for (std::size_t k = 0; k < tr.size(); ++k) worst = std::max(worst, std::abs(tr[k] - ref[k]));
  }
  return worst;
}

Factorization solve_by_factorization(const MetricLieAlgebra& g, const OrbitPoint& x0, double t) {
  const int d = g.dim();
  const Vector p = embed(g, x0);
  Vector plus_gen = Vector::Zero(d);
  plus_gen(g.xnp1_index()) = x0.xnp1;

  const Vector grad = gradient(g.metric(), metric_quadratic(g), p);
  const Matrix full = adjoint_exp(g.alg(), grad, t);
  Matrix plus = adjoint_exp(g.alg(), plus_gen, t);
  Matrix minus = plus.inverse() * full;

  const Vector moved = plus * p;
  return Factorization{std::move(plus), std::move(minus),
                       OrbitPoint{moved.segment(g.v_begin(), 2 * g.n()), moved(g.xnp1_index())}};
}

double minus_factor_nilpotency_defect(const Factorization& f) {
  const Matrix e = f.minus_factor - Matrix::Identity(f.minus_factor.rows(), f.minus_factor.cols());
  return max_abs(e * e * e);
}

std::vector<double> energy_series(const MetricLieAlgebra& g, const Trajectory& traj, const QuadraticFunction& f) {
  std::vector<double> out;
  out.reserve(traj.states.size());
  for (const auto& s : traj.states) out.push_back(f(embed(g, s)));
  return out;
}

}  // namespace heislax
