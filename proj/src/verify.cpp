#include "heislax/verify.hpp"

#include <algorithm>
#include <cmath>

#include "heislax/sampling.hpp"

namespace heislax {

namespace {

struct Report {
  Json checks = Json::array();
  bool all_pass = true;

  void add(const std::string& name, double value, double tol) {
    const bool pass = std::isfinite(value) && value <= tol;
    all_pass = all_pass && pass;
    checks.push_back(Json{{"name", name}, {"value", value}, {"tol", tol}, {"pass", pass}});
  }
};

double state_diff(const OrbitPoint& a, const OrbitPoint& b) {
  return std::max((a.xv - b.xv).cwiseAbs().maxCoeff(), std::abs(a.xnp1 - b.xnp1));
}

double state_scale(const OrbitPoint& x) { return std::max(1.0, x.xv.cwiseAbs().maxCoeff()); }

// Trace-power drift relative to the size of the traced matrices.
double relative_isospectral_drift(const MetricLieAlgebra& g, const Trajectory& traj) {
  double norm = 1.0;
  for (const auto& s : traj.states) norm = std::max(norm, lax_matrices(g, s).l.norm());
  return isospectral_drift(traj, g) / std::pow(norm, g.dim());
}

}  // namespace

MetricLieAlgebra perturb(const MetricLieAlgebra& g, double delta) {
  const int t = g.xnp1_index();
  const int x1 = g.v_begin();
  return g.with_algebra(g.alg().with_constant(t, x1, x1, g.alg().c(t, x1, x1) + delta));
}

Json verify(const MetricLieAlgebra& g, const VerifyOptions& o) {
  const int n = g.n();
  const int d = g.dim();
  const int x0 = MetricLieAlgebra::x0_index();
  const int t = g.xnp1_index();
  const LieAlgebra& alg = g.alg();
  Report r;

  // Structure.
  r.add("antisymmetry", antisymmetry_defect(alg), 0.0);
  r.add("jacobi", jacobi_defect(alg), o.structure_tol);
  r.add("ad_invariance", ad_invariance_defect(alg, g.metric()), o.structure_tol);

  double ideal = 0.0;
  double center = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < t; ++j) {
      ideal = std::max(ideal, std::abs(alg.c(i, j, t)));
      if (i < t)
        for (int k = 1; k < d; ++k) center = std::max(center, std::abs(alg.c(i, j, k)));
    }
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) center = std::max(center, std::abs(alg.c(i, x0, k)));
  r.add("g_minus_ideal", ideal, 0.0);
  r.add("g_minus_bracket_in_center", center, 0.0);
  r.add("solvable", static_cast<double>(derived_series(alg).back()), 0.0);

  const Matrix& gram = g.metric().gram();
  Matrix expected = Matrix::Zero(d, d);
  expected.block(1, 1, 2 * n, 2 * n) = g.a().matrix();
  expected(x0, t) = expected(t, x0) = 1.0;
  r.add("metric_layout", max_abs(gram - expected), 0.0);
  const Splitting sp = splitting(g);
  r.add("splitting_orthogonality", std::max(sp.plus_residual, sp.minus_residual), 0.0);

  const Matrix ad_t = ad_matrix(alg, Vector::Unit(d, t));
  r.add("S_is_ad_Xnp1", max_abs(ad_t.block(1, 1, 2 * n, 2 * n) - g.s()), o.structure_tol);

  // Orbits and brackets.
  Sampler sampler(o.seed);
  std::vector<OrbitPoint> pts;
  for (int k = 0; k < o.samples; ++k) pts.push_back(sampler.orbit_point(n));

  const QuadraticFunction f = metric_quadratic(g);
  const QuadraticFunction ell(Matrix::Zero(d, d), gram * Vector::Unit(d, x0));
  double aks = 0.0;
  double vf = 0.0;
  double kks_det = std::numeric_limits<double>::infinity();
  for (const auto& x : pts) {
    aks = std::max(aks, std::abs(poisson_orbit(g, f, ell, x)) / state_scale(x));
    const OrbitPoint h = ham_vf(g, f, x);
    vf = std::max(vf, state_diff(h, lax_rhs(g, x)) / state_scale(x));
    Matrix omega(2 * n, 2 * n);
    for (int i = 0; i < 2 * n; ++i)
      for (int j = 0; j < 2 * n; ++j)
        omega(i, j) = kks(g, x, GMinusElement{0.0, Vector::Unit(2 * n, i)}, GMinusElement{0.0, Vector::Unit(2 * n, j)});
    kks_det = std::min(kks_det, std::abs(omega.determinant()));
  }
  r.add("aks_involution", aks, o.aks_tol);
  r.add("ham_vf_equals_lax_rhs", vf, o.bracket_tol);
  r.add("kks_nondegenerate", kks_det > 1e-12 ? 0.0 : 1.0, 0.0);

  double pq = 0.0;
  if (g.a().nonsingular()) {
    for (int k = 0; k < std::min(o.samples, 10); ++k) {
      const SymmetricMap ai = sampler.symmetric(n);
      const SymmetricMap aj = sampler.symmetric(n);
      const auto& x = pts[static_cast<std::size_t>(k) % pts.size()];
      const double closed = poisson_quadratics(g, ai, aj, x);
      const double generic = poisson_orbit(g, extend_quadratic(g, ai.matrix(), Extension::trivial),
                                           extend_quadratic(g, aj.matrix(), Extension::trivial), x);
      pq = std::max(pq, std::abs(closed - generic) / std::max(1.0, std::abs(closed)));
    }
  }
  r.add("poisson_quadratics_vs_orbit_bracket", pq, o.bracket_tol);

  // Dynamics.
  double group = 0.0;
  double energy = 0.0;
  double factor = 0.0;
  double iso_exact = 0.0;
  double rk4_err = 0.0;
  double iso_rk4 = 0.0;
  double xnp1_change = 0.0;
  const auto n_traj = std::min<std::size_t>(pts.size(), 3);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const auto& x = pts[k];
    const double s = sampler.uniform(-o.horizon, o.horizon);
    const double u = sampler.uniform(-o.horizon, o.horizon);
    const OrbitPoint a = flow_exact(g, x, s + u);
    const OrbitPoint b = flow_exact(g, flow_exact(g, x, s), u);
    group = std::max(group, state_diff(a, b) / state_scale(a));
    const OrbitPoint viaf = solve_by_factorization(g, x, s).state;
    factor = std::max(factor, state_diff(viaf, flow_exact(g, x, s)) / state_scale(viaf));
    const double f0 = f(embed(g, x));
    energy = std::max(energy, std::abs(f(embed(g, a)) - f0) / std::pow(std::max(state_scale(a), state_scale(x)), 2));
    if (k >= n_traj) continue;

    const Trajectory ex = integrate(g, x, o.horizon, o.dt, Method::exact);
    const Trajectory rk = integrate(g, x, o.horizon, o.dt, Method::rk4);
    for (std::size_t i = 0; i < ex.states.size(); ++i) {
      rk4_err = std::max(rk4_err, state_diff(ex.states[i], rk.states[i]) / state_scale(ex.states[i]));
      xnp1_change = std::max({xnp1_change, std::abs(ex.states[i].xnp1 - x.xnp1), std::abs(rk.states[i].xnp1 - x.xnp1)});
    }
    iso_exact = std::max(iso_exact, relative_isospectral_drift(g, ex));
    iso_rk4 = std::max(iso_rk4, relative_isospectral_drift(g, rk));
  }
  r.add("flow_group_law", group, o.flow_tol);
  r.add("metric_quadratic_conserved", energy, o.structure_tol);
  r.add("factorization_matches_flow", factor, o.flow_tol);
  r.add("xnp1_constant", xnp1_change, 0.0);
  r.add("isospectral_exact", iso_exact, o.flow_tol);
  r.add("rk4_matches_exact", rk4_err, o.rk4_tol);
  r.add("isospectral_rk4", iso_rk4, o.rk4_isospectral_tol);

  Json out;
  out["all_pass"] = r.all_pass;
  out["seed"] = o.seed;
  out["n"] = n;
  out["convention"] = to_string(g.convention());
  out["checks"] = std::move(r.checks);
  return out;
}

}  // namespace heislax
