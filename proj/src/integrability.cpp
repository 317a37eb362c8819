#include "heislax/integrability.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "heislax/sampling.hpp"

namespace heislax {

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// vec(X^T) = T vec(X) for square X of size m (column-major vec).
Matrix commutation_matrix(int m) {
  Matrix t = Matrix::Zero(m * m, m * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) t(i * m + j, j * m + i) = 1.0;
  return t;
}

Matrix unvec(const Vector& v, int m) { return Eigen::Map<const Matrix>(v.data(), m, m); }

double scale_of(const Matrix& m) { return std::max(1.0, max_abs(m)); }

void require_same_n(const SymmetricMap& a, const SymmetricMap& b, const char* what) {
  if (a.n() != b.n()) throw InvalidArgument(std::string(what) + ": symmetric maps have different n");
}

// Sign convention for an integral's coefficient block: positive trace on the
// p-block, then on the q-block, then first nonzero entry positive.
Matrix normalize_sign(const Matrix& ak) {
  const int n = static_cast<int>(ak.rows() / 2);
  const double tol = 1e-12 * scale_of(ak);
  const double p_trace = ak.bottomRightCorner(n, n).trace();
  const double q_trace = ak.topLeftCorner(n, n).trace();
  double key = 0.0;
  if (std::abs(p_trace) > tol) {
    key = p_trace;
  } else if (std::abs(q_trace) > tol) {
    key = q_trace;
  } else {
    for (Eigen::Index c = 0; c < ak.cols() && key == 0.0; ++c)
      for (Eigen::Index r = 0; r < ak.rows(); ++r)
        if (std::abs(ak(r, c)) > tol) {
          key = ak(r, c);
          break;
        }
  }
  return key < 0.0 ? Matrix(-ak) : ak;
}

Derivation family_member(int n, const Matrix& ak) {
  const Matrix sym = 0.5 * (ak + ak.transpose());
  return deriv_of_sym(SymmetricMap(n, normalize_sign(sym)));
}

std::vector<OrbitPoint> sample_points(int n, int count, std::uint64_t seed) {
  Sampler sampler(seed);
  std::vector<OrbitPoint> pts;
  for (int i = 0; i < count; ++i) pts.push_back(sampler.orbit_point(n));
  return pts;
}

Matrix differential_rows(const std::vector<Matrix>& blocks, const OrbitPoint& x) {
  Matrix rows(static_cast<Eigen::Index>(blocks.size()), x.xv.size());
  for (std::size_t k = 0; k < blocks.size(); ++k) rows.row(static_cast<Eigen::Index>(k)) = (blocks[k] * x.xv).transpose();
  return rows;
}

// Strategy 1: A couples each (q_i, p_i) only with itself.
std::optional<std::vector<Derivation>> by_modes(const SymmetricMap& a) {
  const int n = a.n();
  const Matrix& m = a.matrix();
  const double tol = 1e-14 * scale_of(m);
  for (int r = 0; r < 2 * n; ++r)
    for (int c = 0; c < 2 * n; ++c)
      if (r % n != c % n && std::abs(m(r, c)) > tol) return std::nullopt;
  std::vector<Derivation> out;
  for (int k = 0; k < n; ++k) {
    Matrix ak = Matrix::Zero(2 * n, 2 * n);
    for (int r : {k, n + k})
      for (int c : {k, n + k}) ak(r, c) = m(r, c);
    if (max_abs(ak) <= tol) return std::nullopt;
    out.push_back(family_member(n, ak));
  }
  return out;
}

// Strategy 2: spectral projectors of JA onto its n invariant planes, one per
// distinct real value of lambda^2.
std::optional<std::vector<Derivation>> by_spectral_planes(const SymmetricMap& a) {
  const int n = a.n();
  const Matrix k = standard_J(n) * a.matrix();
  Eigen::EigenSolver<Matrix> es(k);
  if (es.info() != Eigen::Success) return std::nullopt;
  const Eigen::VectorXcd lambda = es.eigenvalues();
  const Eigen::MatrixXcd v = es.eigenvectors();
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(v);
  if (!lu.isInvertible()) return std::nullopt;
  const Eigen::MatrixXcd w = lu.inverse();
  const double cond = v.norm() * w.norm();
  if (!std::isfinite(cond) || cond > 1e6) return std::nullopt;

  const double mscale = std::max(1.0, k.norm());
  std::vector<int> cluster(2 * n, -1);
  std::vector<std::complex<double>> centers;
  for (int i = 0; i < 2 * n; ++i) {
    const auto mu = lambda(i) * lambda(i);
    for (std::size_t c = 0; c < centers.size(); ++c)
      if (std::abs(mu - centers[c]) <= 1e-8 * mscale * mscale) cluster[i] = static_cast<int>(c);
    if (cluster[i] < 0) {
      cluster[i] = static_cast<int>(centers.size());
      centers.push_back(mu);
    }
  }
  if (static_cast<int>(centers.size()) != n) return std::nullopt;
  for (const auto& mu : centers) {
    if (std::abs(mu.imag()) > 1e-8 * mscale * mscale || std::abs(mu) <= 1e-10 * mscale * mscale) return std::nullopt;
  }

  std::vector<Derivation> out;
  for (int c = 0; c < n; ++c) {
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    int members = 0;
    for (int i = 0; i < 2 * n; ++i)
      if (cluster[i] == c) {
        p += v.col(i) * w.row(i);
        ++members;
      }
    if (members != 2) return std::nullopt;
    const Matrix proj = p.real();
    if (max_abs(proj * proj - proj) > 1e-8 || max_abs(commutator(proj, k)) > 1e-8 * mscale) return std::nullopt;
    const Matrix ak = a.matrix() * proj;
    if (max_abs(ak - ak.transpose()) > 1e-8 * scale_of(a.matrix())) return std::nullopt;
    out.push_back(family_member(n, ak));
  }
  return out;
}

// Strategy 3: the centralizer of a generic element of z(JA)_d inside z(JA)_d.
std::optional<std::vector<Derivation>> by_generic_cartan(const SymmetricMap& a, std::uint64_t seed,
                                                         std::string& reason) {
  const int n = a.n();
  const auto z = centralizer(a);
  if (static_cast<int>(z.size()) < n) {
    reason = "centralizer has dimension " + std::to_string(z.size()) + " < n";
    return std::nullopt;
  }
  Sampler sampler(seed ^ 0x9e3779b97f4a7c15ULL);
  Matrix generic = Matrix::Zero(2 * n, 2 * n);
  for (const auto& d : z) generic += sampler.normal() * d.matrix();

  Matrix coeff_map(4 * n * n, static_cast<Eigen::Index>(z.size()));
  for (std::size_t i = 0; i < z.size(); ++i) {
    const Matrix c = commutator(z[i].matrix(), generic);
    coeff_map.col(static_cast<Eigen::Index>(i)) = Eigen::Map<const Vector>(c.data(), c.size());
  }
  const Matrix kernel = null_space(coeff_map, 1e-9);
  std::vector<Matrix> cartan;
  for (Eigen::Index j = 0; j < kernel.cols(); ++j) {
    Matrix d = Matrix::Zero(2 * n, 2 * n);
    for (std::size_t i = 0; i < z.size(); ++i) d += kernel(static_cast<Eigen::Index>(i), j) * z[i].matrix();
    cartan.push_back(d);
  }
  for (std::size_t i = 0; i < cartan.size(); ++i)
    for (std::size_t j = i + 1; j < cartan.size(); ++j)
      if (max_abs(commutator(cartan[i], cartan[j])) > 1e-9) {
        reason = "centralizer of a generic element is not abelian";
        return std::nullopt;
      }

  // Greedy selection of n members with independent induced integrals.
  const auto pts = sample_points(n, 8, seed);
  const Matrix j = standard_J(n);
  std::vector<Matrix> chosen_blocks;
  std::vector<Derivation> chosen;
  for (const auto& d : cartan) {
    if (static_cast<int>(chosen.size()) == n) break;
    const Matrix ak = -j * d;
    auto trial = chosen_blocks;
    trial.push_back(0.5 * (ak + ak.transpose()));
    int best = 0;
    for (const auto& p : pts) best = std::max(best, numerical_rank(differential_rows(trial, p), 1e-8));
    if (best == static_cast<int>(trial.size())) {
      chosen_blocks = std::move(trial);
      chosen.push_back(family_member(n, chosen_blocks.back()));
    }
  }
  if (static_cast<int>(chosen.size()) < n) {
    reason = "abelian subalgebra yields only " + std::to_string(chosen.size()) + " independent integrals";
    return std::nullopt;
  }
  return chosen;
}

}  // namespace

double involution_defect(const SymmetricMap& ai, const SymmetricMap& aj) {
  require_same_n(ai, aj, "involution_test");
  const Matrix j = standard_J(ai.n());
  return max_abs(commutator(j * ai.matrix(), j * aj.matrix()));
}

bool involution_test(const SymmetricMap& ai, const SymmetricMap& aj, double tol) {
  return involution_defect(ai, aj) <= tol;
}

double poisson_quadratics(const MetricLieAlgebra& g, const SymmetricMap& ai, const SymmetricMap& aj,
                          const OrbitPoint& x) {
  require_same_n(ai, aj, "poisson_quadratics");
  if (ai.n() != g.n()) throw InvalidArgument("poisson_quadratics: symmetric maps do not match the algebra");
  if (x.xv.size() != 2 * g.n()) throw InvalidArgument("poisson_quadratics: wrong point length");
  if (!g.a().nonsingular()) throw InvalidArgument("poisson_quadratics: metric block A is singular");
  const Matrix s_ginv = g.s() * g.a().matrix().inverse();
  return x.xnp1 * (s_ginv * ai.matrix() * x.xv).dot(aj.matrix() * x.xv);
}

std::vector<Derivation> centralizer(const SymmetricMap& a) {
  const int n = a.n();
  const int m = 2 * n;
  const Matrix j = standard_J(n);
  const Matrix k = j * a.matrix();
  const Matrix id = Matrix::Identity(m, m);
  // vec(D K - K D) and vec(J D - (J D)^T) as linear maps of vec(D).
  const Matrix commute = kron(k.transpose(), id) - kron(id, k);
  const Matrix tmat = commutation_matrix(m);
  const Matrix jd = kron(id, j);
  const Matrix symmetric = jd - tmat * jd;
  Matrix system(2 * m * m, m * m);
  system << commute / scale_of(k), symmetric;
  const Matrix kernel = null_space(system, 1e-10);
  std::vector<Derivation> out;
  for (Eigen::Index c = 0; c < kernel.cols(); ++c) out.emplace_back(n, unvec(kernel.col(c), m));
  return out;
}

AbelianFamily abelian_family(const SymmetricMap& a, std::uint64_t seed) {
  AbelianFamily result;
  if (auto f = by_modes(a)) {
    result.found = true;
    result.members = std::move(*f);
    result.strategy = "mode-decomposition";
    return result;
  }
  if (auto f = by_spectral_planes(a)) {
    result.found = true;
    result.members = std::move(*f);
    result.strategy = "spectral-planes";
    return result;
  }
  std::string reason;
  if (auto f = by_generic_cartan(a, seed, reason)) {
    result.found = true;
    result.members = std::move(*f);
    result.strategy = "generic-cartan";
    return result;
  }
  result.reason = reason;
  return result;
}

std::vector<QuadraticFunction> first_integrals(const std::vector<Derivation>& family, Extension ext) {
  std::vector<QuadraticFunction> out;
  for (const auto& d : family) out.push_back(extend_quadratic(d.n(), sym_of_deriv(d).matrix(), ext));
  return out;
}

int differential_rank(const std::vector<QuadraticFunction>& fns, const std::vector<OrbitPoint>& points,
                      double threshold) {
  if (points.empty()) throw InvalidArgument("differential_rank: no sample points");
  if (fns.empty()) return 0;
  int best = 0;
  for (const auto& x : points) {
    const int n = static_cast<int>(x.xv.size() / 2);
    Vector p = Vector::Zero(2 * n + 2);
    p.segment(1, 2 * n) = x.xv;
    p(2 * n + 1) = x.xnp1;
    Matrix rows(static_cast<Eigen::Index>(fns.size()), 2 * n);
    for (std::size_t k = 0; k < fns.size(); ++k) {
      if (fns[k].dim() != 2 * n + 2) throw InvalidArgument("differential_rank: function dimension mismatch");
      rows.row(static_cast<Eigen::Index>(k)) = fns[k].differential(p).segment(1, 2 * n).transpose();
    }
    best = std::max(best, numerical_rank(rows, threshold));
  }
  return best;
}

std::string to_string(Verdict v) { return v == Verdict::integrable ? "integrable" : "undetermined"; }

IntegrabilityCertificate certificate(const MetricLieAlgebra& g, const CertificateOptions& options) {
  const int n = g.n();
  IntegrabilityCertificate cert{.a = g.a()};
  cert.convention = g.convention();
  cert.seed = options.seed;
  cert.samples = options.samples;
  cert.extension = options.extension.value_or(g.convention() == Convention::oscillator ? Extension::cross_term
                                                                                        : Extension::trivial);

  const AbelianFamily fam = abelian_family(g.a(), options.seed);
  cert.strategy = fam.strategy;
  if (!fam.found) return cert;
  cert.family = fam.members;
  cert.integrals = first_integrals(cert.family, cert.extension);

  double defect = 0.0;
  for (std::size_t i = 0; i < cert.family.size(); ++i) {
    defect = std::max(defect, max_abs(commutator(cert.family[i].matrix(), g.s())));
    for (std::size_t j = i + 1; j < cert.family.size(); ++j)
      defect = std::max(defect, max_abs(commutator(cert.family[i].matrix(), cert.family[j].matrix())));
  }
  cert.commutation_defect = defect;

  std::vector<SymmetricMap> blocks;
  for (const auto& d : cert.family) blocks.push_back(sym_of_deriv(d));
  auto points = sample_points(n, std::max(1, options.samples), options.seed);
  double pdefect = 0.0;
  for (const auto& x : points) {
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      pdefect = std::max(pdefect, std::abs(poisson_quadratics(g, g.a(), blocks[i], x)));
      for (std::size_t j = i + 1; j < blocks.size(); ++j)
        pdefect = std::max(pdefect, std::abs(poisson_quadratics(g, blocks[i], blocks[j], x)));
    }
  }
  cert.poisson_defect = pdefect;

  // Independence on a flow-invariant set: the samples and their images under the flow.
  std::vector<OrbitPoint> rank_points = points;
  for (const auto& x : points)
    for (double t : {0.5, 1.0}) rank_points.push_back(flow_exact(g, x, t));
  cert.rank = differential_rank(cert.integrals, rank_points, options.rank_threshold);

  const bool ok = cert.commutation_defect <= options.commutation_tol && cert.poisson_defect <= options.poisson_tol &&
                  cert.rank == n && static_cast<int>(cert.family.size()) == n;
  cert.verdict = ok ? Verdict::integrable : Verdict::undetermined;
  return cert;
}

std::string to_string(LevelSet s) {
  switch (s) {
    case LevelSet::compact:
      return "compact";
    case LevelSet::noncompact:
      return "noncompact";
    case LevelSet::empty:
      return "empty";
  }
  return "unknown";
}

LevelSet level_set_classify(const std::vector<QuadraticFunction>& integrals, const std::vector<double>& levels) {
  if (integrals.size() != levels.size()) {
    throw InvalidArgument("level_set_classify: one level per integral required");
  }
  if (integrals.empty()) throw InvalidArgument("level_set_classify: no integrals");
  const int vdim = integrals.front().dim() - 2;
  bool indefinite = false;
  Matrix ranges(vdim, 0);
  for (std::size_t k = 0; k < integrals.size(); ++k) {
    if (integrals[k].dim() != vdim + 2) throw InvalidArgument("level_set_classify: dimension mismatch");
    const Matrix q = integrals[k].quad().block(1, 1, vdim, vdim);
    const double c = levels[k];
    Eigen::SelfAdjointEigenSolver<Matrix> es(q);
    const double tol = 1e-12 * scale_of(q);
    int pos = 0;
    int neg = 0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      if (es.eigenvalues()(i) > tol) ++pos;
      if (es.eigenvalues()(i) < -tol) ++neg;
    }
    if (pos == 0 && neg == 0) {
      if (c != 0.0) return LevelSet::empty;
      continue;
    }
    if (pos > 0 && neg > 0) {
      indefinite = true;
      continue;
    }
    if ((neg == 0 && c < 0.0) || (pos == 0 && c > 0.0)) return LevelSet::empty;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
      if (std::abs(es.eigenvalues()(i)) > tol) {
        ranges.conservativeResize(Eigen::NoChange, ranges.cols() + 1);
        ranges.col(ranges.cols() - 1) = es.eigenvectors().col(i);
      }
  }
  if (indefinite) return LevelSet::noncompact;
  return numerical_rank(ranges, 1e-10) == vdim ? LevelSet::compact : LevelSet::noncompact;
}

bool complex_symmetric_test(const Matrix& a, double tol) {
  if (a.rows() != a.cols() || a.rows() % 2 != 0 || a.rows() == 0) {
    throw InvalidArgument("complex_symmetric_test: expected an even square matrix");
  }
  const auto n = a.rows() / 2;
  const Matrix b = a.topLeftCorner(n, n);
  const Matrix c = a.topRightCorner(n, n);
  const Matrix d = a.bottomLeftCorner(n, n);
  const Matrix e = a.bottomRightCorner(n, n);
  return max_abs(c + d) <= tol && max_abs(b - e) <= tol && max_abs(b - b.transpose()) <= tol;
}

bool pairwise_test(const Matrix& ai, const Matrix& aj, double tol) {
  if (ai.rows() != ai.cols() || ai.rows() % 2 != 0 || ai.rows() == 0 || aj.rows() != ai.rows() ||
      aj.cols() != ai.cols()) {
    throw InvalidArgument("pairwise_test: expected even square matrices of equal size");
  }
  const auto n = ai.rows() / 2;
  const Matrix bi = ai.topLeftCorner(n, n);
  const Matrix ci = ai.topRightCorner(n, n);
  const Matrix bj = aj.topLeftCorner(n, n);
  const Matrix cj = aj.topRightCorner(n, n);
  return max_abs(commutator(ci, bj) - commutator(cj, bi)) <= tol &&
         max_abs(commutator(ci, cj) - commutator(bi, bj)) <= tol;
}

}  // namespace heislax
