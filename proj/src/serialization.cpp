#include "heislax/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace heislax {

namespace {

InvalidArgument bad(const std::string& what) { return InvalidArgument("json: " + what); }

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw bad(std::string(what) + " must be a number");
  return j.get<double>();
}

int integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw bad(std::string(what) + " must be an integer");
  return j.get<int>();
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c) + 0.0);  // no negative zeros
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw bad("matrix must be a nonempty array of rows");
  const auto rows = j.size();
  if (!j[0].is_array()) throw bad("matrix rows must be arrays");
  const auto cols = j[0].size();
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw bad("matrix rows must have equal length");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = number(j[r][c], "matrix entry");
  }
  return m;
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i) + 0.0);
  return out;
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) throw bad("vector must be an array");
  Vector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = number(j[i], "vector entry");
  return v;
}

Json to_json(const LieAlgebra& alg, const MetricForm* metric) {
  Json out;
  out["dim"] = alg.dim();
  out["labels"] = alg.labels();
  Json structure = Json::array();
  for (const auto& e : alg.nonzero_entries()) structure.push_back(Json::array({e.i, e.j, e.k, e.value}));
  out["structure"] = std::move(structure);
  if (metric) out["gram"] = matrix_to_json(metric->gram());
  return out;
}

LieAlgebra lie_algebra_from_json(const Json& j) {
  const int dim = integer(field(j, "dim"), "dim");
  if (dim < 1) throw bad("dim must be positive");
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    if (!j["labels"].is_array() || j["labels"].size() != static_cast<std::size_t>(dim)) {
      throw bad("labels must list dim names");
    }
    for (const auto& l : j["labels"]) {
      if (!l.is_string()) throw bad("labels must be strings");
      labels.push_back(l.get<std::string>());
    }
  } else {
    for (int i = 0; i < dim; ++i) labels.push_back("e" + std::to_string(i));
  }
  std::vector<double> table(static_cast<std::size_t>(dim) * dim * dim, 0.0);
  const Json& s = field(j, "structure");
  if (!s.is_array()) throw bad("structure must be an array of [i, j, k, value]");
  for (const auto& e : s) {
    if (!e.is_array() || e.size() != 4) throw bad("structure entries must be [i, j, k, value]");
    const int a = integer(e[0], "i");
    const int b = integer(e[1], "j");
    const int c = integer(e[2], "k");
    if (a < 0 || b < 0 || c < 0 || a >= dim || b >= dim || c >= dim) throw bad("structure index out of range");
    table[(static_cast<std::size_t>(a) * dim + b) * dim + c] = number(e[3], "value");
  }
  return LieAlgebra(std::move(labels), std::move(table));
}

std::optional<MetricForm> metric_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("gram")) return std::nullopt;
  return MetricForm(matrix_from_json(j["gram"]));
}

Json to_json(const MetricLieAlgebra& g) {
  Json out = to_json(g.alg(), &g.metric());
  out["n"] = g.n();
  out["A"] = matrix_to_json(g.a().matrix());
  out["convention"] = to_string(g.convention());
  return out;
}

MetricLieAlgebra metric_algebra_from_json(const Json& j) {
  if (j.is_array()) return from_symmetric(symmetric_from_json(j));
  if (!j.is_object()) throw bad("expected an object or a matrix");
  if (j.contains("oscillator")) return oscillator(integer(j["oscillator"], "oscillator"));

  const Convention convention =
      j.contains("convention") ? convention_from_string(j["convention"].get<std::string>()) : Convention::lb;
  const SymmetricMap a = symmetric_from_json(j);
  MetricLieAlgebra g = [&] {
    if (convention == Convention::lb) return from_symmetric(a);
    if (max_abs(a.matrix() - Matrix::Identity(2 * a.n(), 2 * a.n())) != 0.0) {
      throw bad("the oscillator convention requires A = Id");
    }
    return oscillator(a.n());
  }();

  if (j.contains("structure")) {
    LieAlgebra alg = lie_algebra_from_json(j);
    if (alg.dim() != g.dim()) throw bad("structure dimension does not match n");
    if (auto metric = metric_from_json(j)) {
      if (max_abs(metric->gram() - g.metric().gram()) > 1e-12) throw bad("gram does not match A and convention");
    }
    if (alg.structure() != g.alg().structure()) g = g.with_algebra(std::move(alg));
  }
  return g;
}

Json to_json(const SymmetricMap& a) { return Json{{"n", a.n()}, {"A", matrix_to_json(a.matrix())}}; }

SymmetricMap symmetric_from_json(const Json& j) {
  if (j.is_array()) return SymmetricMap(matrix_from_json(j));
  const Matrix m = matrix_from_json(field(j, "A"));
  if (j.contains("n")) return SymmetricMap(integer(j["n"], "n"), m);
  return SymmetricMap(m);
}

Json to_json(const Derivation& d) { return Json{{"n", d.n()}, {"D", matrix_to_json(d.matrix())}}; }

Derivation derivation_from_json(const Json& j) {
  const Matrix m = matrix_from_json(field(j, "D"));
  const int n = j.contains("n") ? integer(j["n"], "n") : static_cast<int>(m.rows() / 2);
  if (m.rows() != 2 * n || m.cols() != 2 * n) throw bad("D must be 2n x 2n");
  return Derivation(n, m);
}

Json to_json(const OrbitPoint& x) { return Json{{"xv", vector_to_json(x.xv)}, {"xnp1", x.xnp1}}; }

OrbitPoint orbit_point_from_json(const Json& j) {
  if (j.is_array()) {
    const Vector flat = vector_from_json(j);
    if (flat.size() < 3 || flat.size() % 2 == 0) throw bad("point array must have length 2n+1");
    return OrbitPoint{flat.head(flat.size() - 1), flat(flat.size() - 1)};
  }
  return OrbitPoint{vector_from_json(field(j, "xv")), number(field(j, "xnp1"), "xnp1")};
}

Json to_json(const IntegrabilityCertificate& c) {
  Json out;
  out["A"] = matrix_to_json(c.a.matrix());
  Json family = Json::array();
  for (const auto& d : c.family) family.push_back(matrix_to_json(d.matrix()));
  out["family"] = std::move(family);
  Json integrals = Json::array();
  for (const auto& f : c.integrals) integrals.push_back(matrix_to_json(f.quad()));
  out["integrals"] = std::move(integrals);
  out["commutation_defect"] = c.commutation_defect;
  out["poisson_defect"] = c.poisson_defect;
  out["rank"] = c.rank;
  out["verdict"] = to_string(c.verdict);
  out["seed"] = c.seed;
  out["samples"] = c.samples;
  out["strategy"] = c.strategy;
  out["convention"] = to_string(c.convention);
  out["extension"] = c.extension == Extension::cross_term ? "cross-term" : "trivial";
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v + 0.0);
  return buf;
}

std::string trajectory_csv(const MetricLieAlgebra& g, const Trajectory& traj) {
  const int n = g.n();
  std::ostringstream out;
  out << 't';
  for (int i = 1; i <= n; ++i) out << ",x_" << i;
  for (int i = 1; i <= n; ++i) out << ",y_" << i;
  out << ",x_np1,H,drift\n";
  const Matrix& a = g.a().matrix();
  double h0 = 0.0;
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    const auto& s = traj.states[k];
    const double h = 0.5 * s.xv.dot(a * s.xv);
    if (k == 0) h0 = h;
    out << format_double(traj.times[k]);
    for (Eigen::Index i = 0; i < s.xv.size(); ++i) out << ',' << format_double(s.xv(i));
    out << ',' << format_double(s.xnp1) << ',' << format_double(h) << ',' << format_double(h - h0) << '\n';
  }
  return out.str();
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidArgument("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace heislax
