#include "heislax/heislax.h"

#include <cstring>
#include <string>

#include "heislax/verify.hpp"

struct heislax_algebra {
  heislax::MetricLieAlgebra g;
};

struct heislax_trajectory {
  heislax::Trajectory traj;
};

namespace {

thread_local std::string last_error;

heislax_status code_of(heislax::ErrorCode c) {
  switch (c) {
    case heislax::ErrorCode::invalid_argument:
      return HEISLAX_INVALID_ARGUMENT;
    case heislax::ErrorCode::degenerate_metric:
      return HEISLAX_DEGENERATE_METRIC;
    case heislax::ErrorCode::not_a_derivation:
      return HEISLAX_NOT_A_DERIVATION;
    case heislax::ErrorCode::divergence:
      return HEISLAX_DIVERGENCE;
  }
  return HEISLAX_INTERNAL;
}

template <class F>
heislax_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return HEISLAX_OK;
  } catch (const heislax::Error& e) {
    last_error = e.what();
    return code_of(e.code());
  } catch (const nlohmann::json::exception& e) {
    last_error = std::string("json: ") + e.what();
    return HEISLAX_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    last_error = e.what();
    return HEISLAX_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return HEISLAX_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw heislax::InvalidArgument(what);
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

heislax::Matrix square_from(const double* a, int m) {
  heislax::Matrix out(m, m);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) out(r, c) = a[r * m + c];
  return out;
}

heislax::OrbitPoint point_from(const double* x, int n) {
  heislax::OrbitPoint p{heislax::Vector(2 * n), x[2 * n]};
  for (int i = 0; i < 2 * n; ++i) p.xv(i) = x[i];
  return p;
}

}  // namespace

extern "C" {

const char* heislax_last_error(void) { return last_error.c_str(); }

void heislax_string_free(char* s) { delete[] s; }

void heislax_certify_options_default(heislax_certify_options* opts) {
  if (!opts) return;
  const heislax::CertificateOptions d;
  opts->samples = d.samples;
  opts->seed = d.seed;
  opts->commutation_tol = d.commutation_tol;
  opts->poisson_tol = d.poisson_tol;
  opts->rank_threshold = d.rank_threshold;
  opts->extension = HEISLAX_EXT_DEFAULT;
}

void heislax_verify_options_default(heislax_verify_options* opts) {
  if (!opts) return;
  const heislax::VerifyOptions d;
  opts->seed = d.seed;
  opts->samples = d.samples;
  opts->horizon = d.horizon;
  opts->dt = d.dt;
  opts->perturb = 0.0;
}

heislax_status heislax_from_symmetric(int n, const double* a, heislax_algebra** out) {
  return guarded([&] {
    require(a && out && n >= 1, "heislax_from_symmetric: null argument or n < 1");
    *out = new heislax_algebra{heislax::from_symmetric(heislax::SymmetricMap(n, square_from(a, 2 * n)))};
  });
}

heislax_status heislax_oscillator(int n, heislax_algebra** out) {
  return guarded([&] {
    require(out && n >= 1, "heislax_oscillator: null argument or n < 1");
    *out = new heislax_algebra{heislax::oscillator(n)};
  });
}

heislax_status heislax_from_json(const char* json, heislax_algebra** out) {
  return guarded([&] {
    require(json && out, "heislax_from_json: null argument");
    heislax::Json doc;
    try {
      doc = heislax::Json::parse(json);
    } catch (const heislax::Json::parse_error& e) {
      throw heislax::InvalidArgument(std::string("invalid JSON: ") + e.what());
    }
    *out = new heislax_algebra{heislax::metric_algebra_from_json(doc)};
  });
}

void heislax_algebra_free(heislax_algebra* g) { delete g; }

int heislax_algebra_n(const heislax_algebra* g) { return g ? g->g.n() : 0; }

int heislax_algebra_dim(const heislax_algebra* g) { return g ? g->g.dim() : 0; }

heislax_status heislax_algebra_to_json(const heislax_algebra* g, char** out) {
  return guarded([&] {
    require(g && out, "heislax_algebra_to_json: null argument");
    *out = dup_string(heislax::to_json(g->g).dump(2));
  });
}

heislax_status heislax_defects(const heislax_algebra* g, double* jacobi, double* ad_invariance) {
  return guarded([&] {
    require(g, "heislax_defects: null algebra");
    if (jacobi) *jacobi = heislax::jacobi_defect(g->g.alg());
    if (ad_invariance) *ad_invariance = heislax::ad_invariance_defect(g->g.alg(), g->g.metric());
  });
}

heislax_status heislax_perturb(const heislax_algebra* g, double delta, heislax_algebra** out) {
  return guarded([&] {
    require(g && out, "heislax_perturb: null argument");
    *out = new heislax_algebra{heislax::perturb(g->g, delta)};
  });
}

heislax_status heislax_parse_point(const char* json, double* out, size_t len) {
  return guarded([&] {
    require(json && out, "heislax_parse_point: null argument");
    heislax::Json doc;
    try {
      doc = heislax::Json::parse(json);
    } catch (const heislax::Json::parse_error& e) {
      throw heislax::InvalidArgument(std::string("invalid JSON: ") + e.what());
    }
    const auto p = heislax::orbit_point_from_json(doc);
    require(static_cast<size_t>(p.xv.size()) + 1 == len, "heislax_parse_point: point length does not match 2n+1");
    for (Eigen::Index i = 0; i < p.xv.size(); ++i) out[i] = p.xv(i);
    out[p.xv.size()] = p.xnp1;
  });
}

heislax_status heislax_integrate(const heislax_algebra* g, const double* x0, double T, double dt,
                                 heislax_method method, heislax_trajectory** out) {
  return guarded([&] {
    require(g && x0 && out, "heislax_integrate: null argument");
    const auto m = method == HEISLAX_RK4 ? heislax::Method::rk4 : heislax::Method::exact;
    *out = new heislax_trajectory{heislax::integrate(g->g, point_from(x0, g->g.n()), T, dt, m)};
  });
}

void heislax_trajectory_free(heislax_trajectory* t) { delete t; }

size_t heislax_trajectory_length(const heislax_trajectory* t) { return t ? t->traj.states.size() : 0; }

heislax_status heislax_trajectory_state(const heislax_trajectory* t, size_t k, double* time, double* state) {
  return guarded([&] {
    require(t && k < t->traj.states.size(), "heislax_trajectory_state: index out of range");
    const auto& s = t->traj.states[k];
    if (time) *time = t->traj.times[k];
    if (state) {
      for (Eigen::Index i = 0; i < s.xv.size(); ++i) state[i] = s.xv(i);
      state[s.xv.size()] = s.xnp1;
    }
  });
}

heislax_status heislax_trajectory_csv(const heislax_algebra* g, const heislax_trajectory* t, char** out) {
  return guarded([&] {
    require(g && t && out, "heislax_trajectory_csv: null argument");
    *out = dup_string(heislax::trajectory_csv(g->g, t->traj));
  });
}

heislax_status heislax_trajectory_drifts(const heislax_algebra* g, const heislax_trajectory* t,
                                         double* energy_drift, double* isospectral_drift) {
  return guarded([&] {
    require(g && t && !t->traj.states.empty(), "heislax_trajectory_drifts: null or empty argument");
    const auto& a = g->g.a().matrix();
    const auto& s0 = t->traj.states.front();
    const double h0 = 0.5 * s0.xv.dot(a * s0.xv);
    double worst = 0.0;
    for (const auto& s : t->traj.states) worst = std::max(worst, std::abs(0.5 * s.xv.dot(a * s.xv) - h0));
    if (energy_drift) *energy_drift = worst;
    if (isospectral_drift) *isospectral_drift = heislax::isospectral_drift(t->traj, g->g);
  });
}

heislax_status heislax_verify(const heislax_algebra* g, const heislax_verify_options* opts, int* all_pass,
                              char** report_json) {
  return guarded([&] {
    require(g, "heislax_verify: null algebra");
    heislax_verify_options o;
    heislax_verify_options_default(&o);
    if (opts) o = *opts;
    heislax::VerifyOptions vo;
    vo.seed = o.seed;
    vo.samples = o.samples;
    vo.horizon = o.horizon;
    vo.dt = o.dt;
    require(vo.samples >= 1 && vo.dt > 0.0 && vo.horizon > 0.0, "heislax_verify: samples, dt and horizon must be positive");
    const auto target = o.perturb != 0.0 ? heislax::perturb(g->g, o.perturb) : g->g;
    auto report = heislax::verify(target, vo);
    if (o.perturb != 0.0) report["perturbation"] = o.perturb;
    if (all_pass) *all_pass = report["all_pass"].get<bool>() ? 1 : 0;
    if (report_json) *report_json = dup_string(report.dump(2));
  });
}

heislax_status heislax_certify(const heislax_algebra* g, const heislax_certify_options* opts, int* integrable,
                               char** certificate_json) {
  return guarded([&] {
    require(g, "heislax_certify: null algebra");
    heislax_certify_options o;
    heislax_certify_options_default(&o);
    if (opts) o = *opts;
    require(o.samples >= 1, "heislax_certify: samples must be positive");
    heislax::CertificateOptions co;
    co.samples = o.samples;
    co.seed = o.seed;
    co.commutation_tol = o.commutation_tol;
    co.poisson_tol = o.poisson_tol;
    co.rank_threshold = o.rank_threshold;
    if (o.extension == HEISLAX_EXT_TRIVIAL) co.extension = heislax::Extension::trivial;
    if (o.extension == HEISLAX_EXT_CROSS_TERM) co.extension = heislax::Extension::cross_term;
    const auto cert = heislax::certificate(g->g, co);
    if (integrable) *integrable = cert.verdict == heislax::Verdict::integrable ? 1 : 0;
    if (certificate_json) *certificate_json = dup_string(heislax::to_json(cert).dump(2));
  });
}

heislax_status heislax_involution(int n, const double* ai, const double* aj, double tol, int* in_involution,
                                  double* defect) {
  return guarded([&] {
    require(ai && aj && n >= 1, "heislax_involution: null argument or n < 1");
    const heislax::SymmetricMap a(n, square_from(ai, 2 * n));
    const heislax::SymmetricMap b(n, square_from(aj, 2 * n));
    const double d = heislax::involution_defect(a, b);
    if (defect) *defect = d;
    if (in_involution) *in_involution = d <= tol ? 1 : 0;
  });
}

heislax_status heislax_parse_symmetric(const char* json, int* n, double* a, size_t capacity) {
  return guarded([&] {
    require(json && n, "heislax_parse_symmetric: null argument");
    heislax::Json doc;
    try {
      doc = heislax::Json::parse(json);
    } catch (const heislax::Json::parse_error& e) {
      throw heislax::InvalidArgument(std::string("invalid JSON: ") + e.what());
    }
    const auto s = heislax::symmetric_from_json(doc);
    *n = s.n();
    const auto m = static_cast<size_t>(2 * s.n());
    if (a && capacity >= m * m)
      for (size_t r = 0; r < m; ++r)
        for (size_t c = 0; c < m; ++c) a[r * m + c] = s.matrix()(r, c);
  });
}

}  // extern "C"
