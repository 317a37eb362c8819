#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "heislax/integrability.hpp"

namespace heislax {

using Json = nlohmann::json;

/// Rows of scalars.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);
Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j);

/// {"dim", "labels", "structure": [[i, j, k, value]], "gram"?}.
Json to_json(const LieAlgebra& alg, const MetricForm* metric = nullptr);
LieAlgebra lie_algebra_from_json(const Json& j);
std::optional<MetricForm> metric_from_json(const Json& j);

/// Lie algebra document plus {"n", "A", "convention"}.
Json to_json(const MetricLieAlgebra& g);

/// Accepts a full algebra document, a {"n", "A"} document (optionally with
/// "convention"), an {"oscillator": n} document or a bare matrix. A full
/// document whose structure differs from the canonical one is kept as given.
MetricLieAlgebra metric_algebra_from_json(const Json& j);

/// {"n", "A"}; a bare matrix is accepted on input.
Json to_json(const SymmetricMap& a);
SymmetricMap symmetric_from_json(const Json& j);

/// {"n", "D"}.
Json to_json(const Derivation& d);
Derivation derivation_from_json(const Json& j);

/// {"xv", "xnp1"}; a flat array (x_1..x_n, y_1..y_n, x_{n+1}) is accepted on input.
Json to_json(const OrbitPoint& x);
OrbitPoint orbit_point_from_json(const Json& j);

Json to_json(const IntegrabilityCertificate& c);

/// Header t,x_1..x_n,y_1..y_n,x_np1,H,drift with H = 1/2 (A x_v, x_v) and
/// drift = H - H(0); every scalar printed with 17 significant digits.
std::string trajectory_csv(const MetricLieAlgebra& g, const Trajectory& traj);

std::string format_double(double v);

/// Reads and parses a JSON file; InvalidArgument on I/O or syntax errors.
Json read_json_file(const std::string& path);

}  // namespace heislax
