#include "heislax/extension.hpp"

#include <algorithm>
#include <cmath>

namespace heislax {

namespace {

std::vector<std::string> heis_ext_labels(int n) {
  std::vector<std::string> labels{"X0"};
  for (int i = 1; i <= n; ++i) labels.push_back("X" + std::to_string(i));
  for (int i = 1; i <= n; ++i) labels.push_back("Y" + std::to_string(i));
  labels.push_back("X" + std::to_string(n + 1));
  return labels;
}

MetricLieAlgebra extend_r2n(const SymmetricMap& a, const Matrix& s, Convention convention) {
  const int n = a.n();
  const MetricForm phi(a.matrix());
  auto ext = double_extend(2 * n, phi, LieAlgebra::abelian(std::vector<std::string>(2 * n, "")), s);
  LieAlgebra alg(heis_ext_labels(n), ext.alg.structure());
  return MetricLieAlgebra(std::move(alg), std::move(ext.metric), a, s, convention);
}

}  // namespace

std::string to_string(Convention c) { return c == Convention::lb ? "lb" : "oscillator"; }

Convention convention_from_string(const std::string& s) {
  if (s == "lb") return Convention::lb;
  if (s == "oscillator") return Convention::oscillator;
  throw InvalidArgument("unknown convention '" + s + "' (expected lb or oscillator)");
}

MetricLieAlgebra::MetricLieAlgebra(LieAlgebra alg, MetricForm metric, SymmetricMap a, Matrix s,
                                   Convention convention)
    : alg_(std::move(alg)), metric_(std::move(metric)), a_(std::move(a)), s_(std::move(s)),
      convention_(convention) {
  const int d = 2 * a_.n() + 2;
  if (alg_.dim() != d || metric_.dim() != d) {
    throw InvalidArgument("MetricLieAlgebra: algebra and metric must have dimension 2n+2");
  }
  if (s_.rows() != 2 * a_.n() || s_.cols() != 2 * a_.n()) {
    throw InvalidArgument("MetricLieAlgebra: S must be 2n x 2n");
  }
}

MetricLieAlgebra MetricLieAlgebra::with_algebra(LieAlgebra alg) const {
  return MetricLieAlgebra(std::move(alg), metric_, a_, s_, convention_);
}

DoubleExtension double_extend(int base_dim, const MetricForm& phi, const LieAlgebra& base, const Matrix& s) {
  const int m = base_dim;
  if (m < 1 || base.dim() != m || phi.dim() != m || s.rows() != m || s.cols() != m) {
    throw InvalidArgument("double_extend: base, metric and S dimensions must agree");
  }
  const Matrix& g = phi.gram();
  const double scale = std::max({1.0, max_abs(g), max_abs(s)});

  // phi(Su, v) + phi(u, Sv) = 0  <=>  G S + S^T G = 0.
  const Matrix gs = g * s;
  if (max_abs(gs + gs.transpose()) > 1e-12 * scale * scale) {
    throw InvalidArgument("double_extend: S is not skew-symmetric for phi");
  }
  if (ad_invariance_defect(base, phi) > 1e-12 * scale) {
    throw InvalidArgument("double_extend: phi is not ad-invariant on the base algebra");
  }
  // S[u,v] = [Su,v] + [u,Sv] on basis pairs.
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const Vector ei = Vector::Unit(m, i);
      const Vector ej = Vector::Unit(m, j);
      const Vector lhs = s * bracket(base, ei, ej);
      const Vector rhs = bracket(base, s * ei, ej) + bracket(base, ei, s * ej);
      if ((lhs - rhs).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw InvalidArgument("double_extend: S is not a derivation of the base algebra");
      }
    }

  const int d = m + 2;
  const int z = 0;
  const int t = m + 1;
  std::vector<double> table(static_cast<std::size_t>(d) * d * d, 0.0);
  auto set = [&table, d](int i, int j, int k, double v) {
    table[(static_cast<std::size_t>(i) * d + j) * d + k] = v;
  };
  // [B1, B2] = phi(S B1, B2) Z + [B1, B2]_b
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      // phi(S e_i, e_j) = e_j^T G S e_i; skew part taken so antisymmetry is exact.
      set(1 + i, 1 + j, z, 0.5 * (gs(j, i) - gs(i, j)));
      for (int k = 0; k < m; ++k) set(1 + i, 1 + j, 1 + k, base.c(i, j, k));
    }
  // [T, B] = S B, [B, T] = -S B
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k) {
      set(t, 1 + j, 1 + k, s(k, j));
      set(1 + j, t, 1 + k, -s(k, j));
    }

  std::vector<std::string> labels{"Z"};
  for (int i = 0; i < m; ++i) {
    const auto& l = base.labels()[i];
    labels.push_back(l.empty() ? "B" + std::to_string(i + 1) : l);
  }
  labels.push_back("T");

  Matrix gram = Matrix::Zero(d, d);
  gram.block(1, 1, m, m) = g;
  gram(z, t) = gram(t, z) = 1.0;
  return DoubleExtension{LieAlgebra(std::move(labels), std::move(table)), MetricForm(std::move(gram))};
}

MetricLieAlgebra from_symmetric(const SymmetricMap& a) {
  if (!a.nonsingular()) {
    throw InvalidArgument("from_symmetric: A is singular, so b(X,Y) = (AX,Y) is degenerate");
  }
  return extend_r2n(a, standard_J(a.n()) * a.matrix(), Convention::lb);
}

MetricLieAlgebra oscillator(int n) {
  if (n < 1) throw InvalidArgument("oscillator: n must be >= 1");
  return extend_r2n(SymmetricMap(n, Matrix::Identity(2 * n, 2 * n)), -standard_J(n), Convention::oscillator);
}

Splitting splitting(const MetricLieAlgebra& g) {
  const int n = g.n();
  Splitting sp;
  sp.g_minus.push_back(MetricLieAlgebra::x0_index());
  for (int i = 0; i < 2 * n; ++i) {
    sp.g_minus.push_back(g.v_begin() + i);
    sp.g_plus_perp.push_back(g.v_begin() + i);
  }
  sp.g_plus.push_back(g.xnp1_index());
  sp.g_plus_perp.push_back(g.xnp1_index());
  sp.g_minus_perp.push_back(MetricLieAlgebra::x0_index());

  const Matrix& gram = g.metric().gram();
  auto residual = [&gram](const std::vector<int>& a, const std::vector<int>& b) {
    double worst = 0.0;
    for (int i : a)
      for (int j : b) worst = std::max(worst, std::abs(gram(i, j)));
    return worst;
  };
  sp.plus_residual = residual(sp.g_plus, sp.g_plus_perp);
  sp.minus_residual = residual(sp.g_minus, sp.g_minus_perp);
  return sp;
}

}  // namespace heislax
