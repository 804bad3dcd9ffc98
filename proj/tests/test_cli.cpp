#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "rufst/io.hpp"
#include "rufst/verify/suites.hpp"

namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("rufst_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args, const fs::path& dir) {
  const fs::path out_file = dir / "stdout.txt";
  const std::string cmd =
      std::string(RUFST_CLI_PATH) + " " + args + " > " + out_file.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_file);
  std::stringstream ss;
  ss << in.rdbuf();
  r.output = ss.str();
  return r;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("frame build: full-cover run passes and reports the residual") {
  TempDir tmp;
  const RunResult r = run_cli("frame build --A 2 --B 8 --M 12 --size 33x33", tmp.path);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("partition residual inside") != std::string::npos);
  CHECK(r.output.find("full cover: yes") != std::string::npos);
  CHECK(r.output.find("wedge diameters") != std::string::npos);
  CHECK(r.output.find("ok") != std::string::npos);
}

TEST_CASE("frame build: non-full-cover warns but still exits 0") {
  TempDir tmp;
  const RunResult r = run_cli("frame build --A 1 --B 4 --M 2 --size 17x17", tmp.path);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("full cover: no") != std::string::npos);
  CHECK(r.output.find("warning") != std::string::npos);
}

TEST_CASE("invalid configuration exits 2 and names the field") {
  TempDir tmp;
  const RunResult r = run_cli("frame build --A 2 --B 0 --M 2 --size 17x17", tmp.path);
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("B") != std::string::npos);

  const RunResult r2 = run_cli("scatter --input nonexistent.npy", tmp.path);
  CHECK(r2.exit_code == 2);

  std::ofstream cfg(tmp.path / "bad.json");
  cfg << "{\"A\": -3}";
  cfg.close();
  const RunResult r3 =
      run_cli("frame build --config " + (tmp.path / "bad.json").string(), tmp.path);
  CHECK(r3.exit_code == 2);
  CHECK(r3.output.find("A") != std::string::npos);
}

TEST_CASE("scatter: deterministic outputs, norms below input norm, exit codes") {
  TempDir tmp;
  std::mt19937_64 rng(11);
  std::normal_distribution<double> d(0.0, 1.0);
  std::vector<double> img(17 * 17);
  for (double& v : img) v = d(rng);
  rufst::npy_write_real(tmp.path / "in.npy", {17, 17}, img);

  const std::string base = "scatter --input " + (tmp.path / "in.npy").string() +
                           " --A 2 --B 4 --M 2 --K 2 --transform rotational"
                           " --rotation-mode exact";
  const RunResult r1 = run_cli(base + " --out " + (tmp.path / "f1").string(), tmp.path);
  REQUIRE(r1.exit_code == 0);
  const RunResult r2 = run_cli(base + " --out " + (tmp.path / "f2").string(), tmp.path);
  REQUIRE(r2.exit_code == 0);

  CHECK(read_file(tmp.path / "f1" / "maps.npy") == read_file(tmp.path / "f2" / "maps.npy"));
  CHECK(read_file(tmp.path / "f1" / "meta.json") == read_file(tmp.path / "f2" / "meta.json"));
  CHECK(read_file(tmp.path / "f1" / "norms.csv") == read_file(tmp.path / "f2" / "norms.csv"));

  // printed feature norm is bounded by the input norm
  double input_norm = 0.0, feature_norm = 0.0;
  std::istringstream lines(r1.output);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.rfind("input norm:", 0) == 0) input_norm = std::stod(line.substr(11));
    if (line.rfind("feature norm:", 0) == 0) feature_norm = std::stod(line.substr(13));
  }
  CHECK(input_norm > 0.0);
  CHECK(feature_norm > 0.0);
  CHECK(feature_norm <= input_norm * (1.0 + 1e-10));

  // plain and rotational norms agree in exact mode
  const RunResult rp = run_cli("scatter --input " + (tmp.path / "in.npy").string() +
                                   " --A 2 --B 4 --M 2 --K 2 --transform plain",
                               tmp.path);
  REQUIRE(rp.exit_code == 0);
  double plain_norm = 0.0;
  std::istringstream plines(rp.output);
  while (std::getline(plines, line)) {
    if (line.rfind("feature norm:", 0) == 0) plain_norm = std::stod(line.substr(13));
  }
  CHECK(std::abs(plain_norm - feature_norm) / plain_norm < 1e-10);

  const RunResult rc = run_cli(base + " --cap 5", tmp.path);
  CHECK(rc.exit_code == 3);
}

TEST_CASE("analyze: residual reported, coefficients exported") {
  TempDir tmp;
  std::vector<double> img(9 * 9);
  std::mt19937_64 rng(13);
  std::normal_distribution<double> d(0.0, 1.0);
  for (double& v : img) v = d(rng);
  rufst::npy_write_real(tmp.path / "in.npy", {9, 9}, img);
  const RunResult r = run_cli("analyze --input " + (tmp.path / "in.npy").string() +
                                  " --A 2 --B 8 --out " + (tmp.path / "c").string(),
                              tmp.path);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("parseval residual") != std::string::npos);
  CHECK(fs::exists(tmp.path / "c" / "coeffs.npy"));
  CHECK(fs::exists(tmp.path / "c" / "meta.json"));

  // residual printed in scientific notation; must be tiny
  const std::size_t pos = r.output.find("parseval residual: ");
  const double residual = std::stod(r.output.substr(pos + 19));
  CHECK(residual < 1e-10);
}

TEST_CASE("frame render: atom images and the B=4 montage") {
  TempDir tmp;
  const RunResult r = run_cli(
      "frame render --A 2 --B 4 --M 4 --size 33x33 --out " + (tmp.path / "r").string(),
      tmp.path);
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(tmp.path / "r" / "atom_f0.pgm"));
  CHECK(fs::exists(tmp.path / "r" / "atom_m1.j0.pgm"));
  CHECK(fs::exists(tmp.path / "r" / "montage.pgm"));
  CHECK(fs::exists(tmp.path / "r" / "render_meta.json"));

  // the low-pass render is radially symmetric: equal to its quarter turn
  const rufst::RealArray low = rufst::pgm_read(tmp.path / "r" / "atom_f0.pgm");
  for (int i1 = 0; i1 < low.n1; ++i1) {
    for (int i2 = 0; i2 < low.n2; ++i2) {
      const int c = low.n1 / 2;
      const int r1 = c - (i2 - c), r2 = c + (i1 - c);
      CHECK(low.at(i1, i2) == doctest::Approx(low.at(r1, r2)).epsilon(1e-6));
    }
  }
}

TEST_CASE("verify: default run passes, reports are seeded-deterministic") {
  TempDir tmp;
  const RunResult r1 = run_cli("verify --seed 7", tmp.path);
  CHECK(r1.exit_code == 0);
  CHECK(r1.output.find("FAIL") == std::string::npos);
  const RunResult r2 = run_cli("verify --seed 7", tmp.path);
  CHECK(r1.output == r2.output);

  const RunResult rs = run_cli("verify --seed 7 --suite core", tmp.path);
  CHECK(rs.exit_code == 0);
  CHECK(rs.output.find("core/") != std::string::npos);
  CHECK(rs.output.find("finite/") == std::string::npos);
}

TEST_CASE("verify: negative control fails the targeted check and exits 1") {
  TempDir tmp;
  const RunResult r = run_cli("verify --seed 7 --suite finite --break finite_parseval", tmp.path);
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("FAIL finite/finite_parseval") != std::string::npos);
  // only the targeted check fails
  std::istringstream lines(r.output);
  std::string line;
  int fails = 0;
  while (std::getline(lines, line)) {
    if (line.rfind("FAIL", 0) == 0) ++fails;
  }
  CHECK(fails == 1);
}

TEST_CASE("every verify check has a working negative control") {
  // exercised in-process: sabotage each check and expect exactly that check
  // to flip to FAIL
  const std::vector<std::string> names = rufst::verify::all_check_names();
  REQUIRE(!names.empty());
  for (const std::string& name : names) {
    rufst::verify::VerifyOptions opt;
    opt.seed = 7;
    opt.break_check = name;
    bool target_failed = false;
    bool others_ok = true;
    for (const rufst::verify::CheckResult& r : rufst::verify::run_verify(opt)) {
      if (r.name == name) {
        target_failed = !r.pass;
      } else {
        others_ok &= r.pass;
      }
    }
    INFO("check ", name);
    CHECK(target_failed);
    CHECK(others_ok);
  }
}
