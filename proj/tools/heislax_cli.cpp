// heislax command-line front end. Links only the C interface.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "heislax/heislax.h"

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kInvalid = 2;
constexpr int kDivergence = 3;
constexpr int kUndetermined = 4;

struct Failure {
  int exit_code;
  std::string message;
};

int exit_code_for(heislax_status s) {
  switch (s) {
    case HEISLAX_OK:
      return kOk;
    case HEISLAX_DIVERGENCE:
      return kDivergence;
    case HEISLAX_INTERNAL:
      return kFailed;
    default:
      return kInvalid;
  }
}

void check(heislax_status s) {
  if (s != HEISLAX_OK) throw Failure{exit_code_for(s), heislax_last_error()};
}

struct AlgebraDeleter {
  void operator()(heislax_algebra* g) const { heislax_algebra_free(g); }
};
struct TrajectoryDeleter {
  void operator()(heislax_trajectory* t) const { heislax_trajectory_free(t); }
};
struct StringDeleter {
  void operator()(char* s) const { heislax_string_free(s); }
};
using AlgebraPtr = std::unique_ptr<heislax_algebra, AlgebraDeleter>;
using TrajectoryPtr = std::unique_ptr<heislax_trajectory, TrajectoryDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kInvalid, "cannot open '" + path + "'"};
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// A path, or inline JSON when no such file exists and the text looks like JSON.
std::string read_json_arg(const std::string& arg) {
  std::ifstream probe(arg);
  if (!probe && !arg.empty() && (arg.front() == '{' || arg.front() == '[')) return arg;
  return read_file(arg);
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw Failure{kInvalid, "cannot write '" + out_path + "'"};
  out << text;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct AlgebraArgs {
  std::string a_path;
  int oscillator = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--A", a_path, "JSON: {\"n\",\"A\"}, a bare matrix, or a built algebra");
    cmd->add_option("--oscillator", oscillator, "use the oscillator algebra of this n")->check(CLI::PositiveNumber);
  }

  AlgebraPtr load(int default_oscillator = 0) const {
    heislax_algebra* g = nullptr;
    if (!a_path.empty() && oscillator > 0) throw Failure{kInvalid, "give either --A or --oscillator, not both"};
    if (!a_path.empty()) {
      check(heislax_from_json(read_json_arg(a_path).c_str(), &g));
    } else if (oscillator > 0 || default_oscillator > 0) {
      check(heislax_oscillator(oscillator > 0 ? oscillator : default_oscillator, &g));
    } else {
      throw Failure{kInvalid, "one of --A or --oscillator is required"};
    }
    return AlgebraPtr(g);
  }
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("HEISLAX_SEED")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw Failure{kInvalid, std::string("HEISLAX_SEED is not an unsigned integer: ") + env};
  }
  return 0;
}

std::vector<double> read_matrix(const std::string& arg, int& n) {
  const std::string text = read_json_arg(arg);
  check(heislax_parse_symmetric(text.c_str(), &n, nullptr, 0));
  std::vector<double> a(static_cast<std::size_t>(4 * n * n));
  check(heislax_parse_symmetric(text.c_str(), &n, a.data(), a.size()));
  return a;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"heislax: Lax systems on solvable metric Lie algebras over the Heisenberg algebra"};
  app.require_subcommand(1);

  // build
  auto* build = app.add_subcommand("build", "build an algebra and print its structure JSON");
  AlgebraArgs build_alg;
  build_alg.attach(build);
  std::string build_out;
  build->add_option("--out", build_out, "output path (default stdout)");

  // integrate
  auto* integ = app.add_subcommand("integrate", "integrate the Lax flow to CSV");
  AlgebraArgs integ_alg;
  integ_alg.attach(integ);
  std::string x0_arg;
  double T = 0.0;
  double dt = 1e-3;
  std::string method = "exact";
  std::string integ_out;
  integ->add_option("--x0", x0_arg, "initial point JSON {\"xv\",\"xnp1\"} or flat array")->required();
  integ->add_option("--T", T, "final time")->required();
  integ->add_option("--dt", dt, "step size");
  integ->add_option("--method", method, "exact or rk4")->check(CLI::IsMember({"exact", "rk4"}));
  integ->add_option("--out", integ_out, "CSV output path (default stdout)");

  // verify
  auto* ver = app.add_subcommand("verify", "run the invariant suite (default: oscillator n = 3)");
  AlgebraArgs ver_alg;
  ver_alg.attach(ver);
  std::optional<std::uint64_t> ver_seed;
  heislax_verify_options vopts;
  heislax_verify_options_default(&vopts);
  std::string ver_out;
  ver->add_option("--seed", ver_seed, "RNG seed (fallback HEISLAX_SEED, then 0)");
  ver->add_option("--samples", vopts.samples, "random orbit points")->check(CLI::PositiveNumber);
  ver->add_option("--T", vopts.horizon, "flow horizon")->check(CLI::PositiveNumber);
  ver->add_option("--dt", vopts.dt, "RK4 step")->check(CLI::PositiveNumber);
  ver->add_option("--perturb", vopts.perturb, "inject a structure-constant perturbation of this size");
  ver->add_option("--out", ver_out, "report path (default stdout)");

  // certify
  auto* cert = app.add_subcommand("certify", "search for n commuting integrals and emit a certificate");
  AlgebraArgs cert_alg;
  cert_alg.attach(cert);
  std::optional<std::uint64_t> cert_seed;
  heislax_certify_options copts;
  heislax_certify_options_default(&copts);
  std::string extension = "default";
  std::string cert_out;
  cert->add_option("--seed", cert_seed, "RNG seed (fallback HEISLAX_SEED, then 0)");
  cert->add_option("--samples", copts.samples, "random orbit points for the bracket checks")
      ->check(CLI::PositiveNumber);
  cert->add_option("--tol-commutation", copts.commutation_tol, "commutator tolerance");
  cert->add_option("--tol-poisson", copts.poisson_tol, "Poisson bracket tolerance");
  cert->add_option("--tol-rank", copts.rank_threshold, "singular value threshold for the rank");
  cert->add_option("--extension", extension, "trivial, cross-term or default")
      ->check(CLI::IsMember({"default", "trivial", "cross-term"}));
  cert->add_option("--out", cert_out, "certificate path (default stdout)");

  // involution
  auto* inv = app.add_subcommand("involution", "test [J Ai, J Aj] = 0 for two symmetric maps");
  std::vector<std::string> inv_paths;
  double inv_tol = 1e-10;
  std::string inv_out;
  inv->add_option("--A", inv_paths, "two symmetric-map JSON inputs")->expected(2)->required();
  inv->add_option("--tol-involution", inv_tol, "commutator tolerance");
  inv->add_option("--out", inv_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalid;
  }

  try {
    if (*build) {
      auto g = build_alg.load();
      double jac = 0.0;
      double adi = 0.0;
      check(heislax_defects(g.get(), &jac, &adi));
      char* json = nullptr;
      check(heislax_algebra_to_json(g.get(), &json));
      StringPtr owned(json);
      emit(build_out, std::string(json) + "\n");
      std::cerr << "jacobi_defect=" << fmt(jac) << " ad_invariance_defect=" << fmt(adi) << "\n";
      return kOk;
    }

    if (*integ) {
      if (!(dt > 0.0)) throw Failure{kInvalid, "--dt must be positive"};
      if (!(T > 0.0)) throw Failure{kInvalid, "--T must be positive"};
      auto g = integ_alg.load();
      const int n = heislax_algebra_n(g.get());
      std::vector<double> x0(static_cast<std::size_t>(2 * n + 1));
      check(heislax_parse_point(read_json_arg(x0_arg).c_str(), x0.data(), x0.size()));
      heislax_trajectory* t = nullptr;
      check(heislax_integrate(g.get(), x0.data(), T, dt, method == "rk4" ? HEISLAX_RK4 : HEISLAX_EXACT, &t));
      TrajectoryPtr traj(t);
      char* csv = nullptr;
      check(heislax_trajectory_csv(g.get(), traj.get(), &csv));
      StringPtr owned(csv);
      emit(integ_out, csv);
      double energy = 0.0;
      double iso = 0.0;
      check(heislax_trajectory_drifts(g.get(), traj.get(), &energy, &iso));
      std::cerr << "energy_drift=" << fmt(energy) << " isospectral_drift=" << fmt(iso) << "\n";
      return kOk;
    }

    if (*ver) {
      auto g = ver_alg.load(3);
      vopts.seed = resolve_seed(ver_seed);
      int pass = 0;
      char* report = nullptr;
      check(heislax_verify(g.get(), &vopts, &pass, &report));
      StringPtr owned(report);
      emit(ver_out, std::string(report) + "\n");
      return pass ? kOk : kFailed;
    }

    if (*cert) {
      auto g = cert_alg.load();
      copts.seed = resolve_seed(cert_seed);
      copts.extension = extension == "trivial"      ? HEISLAX_EXT_TRIVIAL
                        : extension == "cross-term" ? HEISLAX_EXT_CROSS_TERM
                                                    : HEISLAX_EXT_DEFAULT;
      int integrable = 0;
      char* json = nullptr;
      check(heislax_certify(g.get(), &copts, &integrable, &json));
      StringPtr owned(json);
      emit(cert_out, std::string(json) + "\n");
      return integrable ? kOk : kUndetermined;
    }

    if (*inv) {
      int ni = 0;
      int nj = 0;
      const auto ai = read_matrix(inv_paths[0], ni);
      const auto aj = read_matrix(inv_paths[1], nj);
      if (ni != nj) throw Failure{kInvalid, "the two symmetric maps have different n"};
      int ok = 0;
      double defect = 0.0;
      check(heislax_involution(ni, ai.data(), aj.data(), inv_tol, &ok, &defect));
      emit(inv_out, std::string("{\n  \"in_involution\": ") + (ok ? "true" : "false") + ",\n  \"defect\": " +
                        fmt(defect) + ",\n  \"tol\": " + fmt(inv_tol) + "\n}\n");
      return kOk;
    }
  } catch (const Failure& f) {
    std::cerr << "heislax: " << f.message << "\n";
    return f.exit_code;
  }
  return kInvalid;
}
