#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

fs::path tmp_dir() {
  const fs::path d = HEISLAX_TEST_TMP;
  fs::create_directories(d);
  return d;
}

std::string path(const std::string& name) { return (tmp_dir() / name).string(); }

void write(const std::string& name, const std::string& text) { std::ofstream(path(name)) << text; }

std::string slurp(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Runs the CLI with stdout sent to `out` (relative to the temp dir) and returns its exit code.
int run(const std::string& args, const std::string& out = "stdout.txt", const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + "\"" HEISLAX_CLI "\" " + args + " > \"" + path(out) +
                          "\" 2> \"" + path("stderr.txt") + "\"";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::vector<double> last_row(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::string last;
  while (std::getline(in, line))
    if (!line.empty()) last = line;
  std::vector<double> vals;
  std::istringstream fields(last);
  for (std::string f; std::getline(fields, f, ',');) vals.push_back(std::stod(f));
  return vals;
}

}  // namespace

TEST_CASE("build") {
  REQUIRE(run("build --oscillator 2", "osc2.json") == 0);
  const Json j = Json::parse(slurp(path("osc2.json")));
  CHECK(j.at("n") == 2);
  CHECK(j.at("convention") == "oscillator");
  CHECK(slurp(path("stderr.txt")).find("jacobi_defect=") != std::string::npos);

  write("id2.json", R"({"n": 1, "A": [[1, 0], [0, 1]]})");
  REQUIRE(run("build --A " + path("id2.json"), "lb1.json") == 0);
  CHECK(Json::parse(slurp(path("lb1.json"))).at("convention") == "lb");

  write("singular.json", "[[1, 0], [0, 0]]");
  CHECK(run("build --A " + path("singular.json")) == 2);
  CHECK(!slurp(path("stderr.txt")).empty());
  CHECK(run("build --A " + path("missing.json")) == 2);
  CHECK(run("build") == 2);
  CHECK(run("frobnicate") == 2);
}

TEST_CASE("integrate the oscillator over one period") {
  REQUIRE(run("build --oscillator 1", "osc1.json") == 0);
  char two_pi[40];
  std::snprintf(two_pi, sizeof two_pi, "%.17g", 2.0 * M_PI);
  REQUIRE(run("integrate --A " + path("osc1.json") + " --x0 '[1, 0.5, 1]' --T " + std::string(two_pi) +
                  " --dt 0.1 --method exact",
              "period.csv") == 0);
  const std::string csv = slurp(path("period.csv"));
  CHECK(csv.rfind("t,x_1,y_1,x_np1,H,drift\n", 0) == 0);
  const auto row = last_row(csv);
  REQUIRE(row.size() == 6);
  CHECK(std::abs(row[1] - 1.0) <= 1e-10);
  CHECK(std::abs(row[2] - 0.5) <= 1e-10);
  CHECK(slurp(path("stderr.txt")).find("energy_drift=") != std::string::npos);
}

TEST_CASE("integrate the pendulum: cosh and sinh") {
  write("pend.json", "[[1, 0], [0, -1]]");
  write("x0.json", R"({"xv": [1, 0], "xnp1": 1})");
  REQUIRE(run("integrate --A " + path("pend.json") + " --x0 " + path("x0.json") + " --T 1 --dt 0.5", "pend.csv") ==
          0);
  const auto row = last_row(slurp(path("pend.csv")));
  REQUIRE(row.size() == 6);
  CHECK(std::abs(row[1] - std::cosh(1.0)) <= 1e-12);
  CHECK(std::abs(row[2] - std::sinh(1.0)) <= 1e-12);

  REQUIRE(run("integrate --A " + path("pend.json") + " --x0 " + path("x0.json") + " --T 1 --dt 1e-3 --method rk4",
              "pend_rk4.csv") == 0);
  const auto rk = last_row(slurp(path("pend_rk4.csv")));
  CHECK(std::abs(rk[1] - std::cosh(1.0)) <= 1e-6);
}

TEST_CASE("integrate errors") {
  write("pend.json", "[[1, 0], [0, -1]]");
  CHECK(run("integrate --A " + path("pend.json") + " --x0 '[1, 0, 1]' --T 1 --dt 0") == 2);
  CHECK(run("integrate --A " + path("pend.json") + " --x0 '[1, 0, 1]' --T 1 --dt -0.1") == 2);
  CHECK(run("integrate --A " + path("pend.json") + " --x0 '[1, 0]' --T 1 --dt 0.1") == 2);
  CHECK(run("integrate --A " + path("pend.json") + " --x0 '[1, 1, 50]' --T 1000 --dt 0.01 --method rk4") == 3);
}

TEST_CASE("verify") {
  CHECK(run("verify --seed 1", "verify.json") == 0);
  const Json r = Json::parse(slurp(path("verify.json")));
  CHECK(r.at("all_pass") == true);
  CHECK(r.at("n") == 3);
  CHECK(run("verify --seed 1 --perturb 0.1", "verify_bad.json") == 1);
  CHECK(Json::parse(slurp(path("verify_bad.json"))).at("all_pass") == false);
  CHECK(run("verify --seed 1 --oscillator 2 --samples 5 --T 1 --dt 1e-3") == 0);
}

TEST_CASE("certify") {
  REQUIRE(run("certify --oscillator 3", "cert3.json") == 0);
  const Json c = Json::parse(slurp(path("cert3.json")));
  CHECK(c.at("verdict") == "integrable");
  CHECK(c.at("rank") == 3);
  CHECK(c.at("strategy") == "mode-decomposition");

  write("pend2.json", "[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]]");
  REQUIRE(run("certify --A " + path("pend2.json"), "cert_pend.json") == 0);
  CHECK(Json::parse(slurp(path("cert_pend.json"))).at("verdict") == "integrable");

  CHECK(run("certify --oscillator 2 --tol-rank 1e300", "cert_undet.json") == 4);
  CHECK(Json::parse(slurp(path("cert_undet.json"))).at("verdict") == "undetermined");
  CHECK(run("certify --oscillator 2 --extension bogus") == 2);
}

TEST_CASE("involution") {
  write("ia.json", "[[1, 0], [0, 1]]");
  write("ib.json", "[[0, 1], [1, 0]]");
  REQUIRE(run("involution --A " + path("ia.json") + " --A " + path("ia.json"), "inv_yes.json") == 0);
  CHECK(Json::parse(slurp(path("inv_yes.json"))).at("in_involution") == true);
  REQUIRE(run("involution --A " + path("ia.json") + " --A " + path("ib.json"), "inv_no.json") == 0);
  CHECK(Json::parse(slurp(path("inv_no.json"))).at("in_involution") == false);
  write("i4.json", "[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]");
  CHECK(run("involution --A " + path("ia.json") + " --A " + path("i4.json")) == 2);
}

TEST_CASE("outputs are byte-identical across runs") {
  for (const std::string& args :
       {std::string("verify --seed 5"), std::string("certify --oscillator 2 --seed 5"),
        std::string("integrate --oscillator 2 --x0 '[1, 2, 3, 4, 1]' --T 3 --dt 0.01 --method rk4")}) {
    REQUIRE(run(args, "first.out") == 0);
    REQUIRE(run(args, "second.out") == 0);
    CHECK_MESSAGE(slurp(path("first.out")) == slurp(path("second.out")), args);
  }
}

TEST_CASE("HEISLAX_SEED is the seed fallback") {
  REQUIRE(run("verify --seed 11", "flag.json") == 0);
  REQUIRE(run("verify", "env.json", "HEISLAX_SEED=11") == 0);
  CHECK(slurp(path("flag.json")) == slurp(path("env.json")));
  REQUIRE(run("verify", "noenv.json", "HEISLAX_SEED=12") == 0);
  CHECK(slurp(path("flag.json")) != slurp(path("noenv.json")));
  CHECK(run("verify", "bad.json", "HEISLAX_SEED=abc") == 2);
}
