// Drives the command-line binary end to end: artifact formats, exit codes,
// determinism across runs, and machine-readable errors on stderr. The
// binary path is injected by the build as FOCKCANON_CLI_PATH.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "fockcanon/canonical_operator.hpp"

namespace fc = fockcanon;
using fc::cplx;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::filesystem::path tmp_dir() {
  static const std::filesystem::path dir = [] {
    auto d = std::filesystem::temp_directory_path() /
             ("fockcanon_cli_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// env_prefix goes in front of the command, e.g. "FOCKCANON_NODES=32".
RunResult run(const std::string& args, const std::string& env_prefix = "") {
  const auto out_path = tmp_dir() / "stdout.txt";
  const auto err_path = tmp_dir() / "stderr.txt";
  std::string cmd;
  if (!env_prefix.empty()) {
    cmd += env_prefix;
    cmd += ' ';
  }
  cmd += '"';
  cmd += FOCKCANON_CLI_PATH;
  cmd += "\" ";
  cmd += args;
  cmd += " >\"" + out_path.string() + "\" 2>\"" + err_path.string() + "\"";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  return r;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    const auto nl = text.find('\n', start);
    if (nl == std::string::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

// CSV cells are quoted "re,im" pairs.
std::vector<cplx> parse_csv_row(const std::string& line) {
  std::vector<cplx> cells;
  std::size_t pos = 0;
  while ((pos = line.find('"', pos)) != std::string::npos) {
    const auto end = line.find('"', pos + 1);
    REQUIRE(end != std::string::npos);
    const std::string cell = line.substr(pos + 1, end - pos - 1);
    const auto comma = cell.find(',');
    REQUIRE(comma != std::string::npos);
    cells.emplace_back(std::stod(cell.substr(0, comma)),
                       std::stod(cell.substr(comma + 1)));
    pos = end + 1;
  }
  return cells;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("classify prints the verdict with the squared HS norm") {
  auto r = run("classify --s 2,0 --t 1,0");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "{\"class\":\"HilbertSchmidt\",\"hs_norm_sq\":1.0}\n");
  CHECK(r.err.empty());

  r = run("classify --s 1,0 --t 0,0");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "{\"class\":\"Unitary\",\"hs_norm_sq\":null}\n");

  r = run("classify --s 1,0 --t 0.5,0");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "{\"class\":\"Unbounded\",\"hs_norm_sq\":null}\n");
}

TEST_CASE("invalid inputs exit with code 2 and error JSON on stderr") {
  auto r = run("classify --s 1,0 --t 1,0");
  CHECK(r.exit_code == 2);
  CHECK(r.out.empty());
  CHECK(contains(r.err, "\"error\":\"DegenerateElement\""));

  r = run("classify --s 2,0");
  CHECK(r.exit_code == 2);
  CHECK(contains(r.err, "\"error\":\"UsageError\""));

  r = run("classify --s 2,0 --t 1,0 --bogus 3");
  CHECK(r.exit_code == 2);
  CHECK(contains(r.err, "\"error\":\"UsageError\""));

  r = run("classify --s abc --t 1,0");
  CHECK(r.exit_code == 2);
  CHECK(contains(r.err, "re,im"));

  r = run("kernel --s 0,0 --t 0,0 --z 1,0");
  CHECK(r.exit_code == 2);
  CHECK(contains(r.err, "\"error\":\"ZeroS\""));

  r = run("matrix --s 2,0 --t 1,0 --N 257");
  CHECK(r.exit_code == 2);
  CHECK(contains(r.err, "\"error\":\"TruncationTooLarge\""));

  r = run("matrix --s 2,0 --t 1,0 --N 4");
  CHECK(r.exit_code == 2);
  CHECK(contains(r.err, "at least 8"));

  r = run("");
  CHECK(r.exit_code == 2);
}

TEST_CASE("matrix CSV carries one quoted re,im cell per entry") {
  const auto r = run("matrix --s 2,0 --t 1,0 --N 8 --format csv");
  REQUIRE(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 8);

  // %.17g round-trips doubles exactly, so the parsed cells must equal the
  // library matrix bit for bit.
  const fc::GroupElement g{cplx{2.0, 0.0}, cplx{1.0, 0.0}};
  const Eigen::MatrixXcd M = fc::matrix(g, 8);
  for (std::size_t m = 0; m < 8; ++m) {
    const auto cells = parse_csv_row(lines[m]);
    REQUIRE(cells.size() == 8);
    for (std::size_t n = 0; n < 8; ++n) {
      CHECK(cells[n].real() == M(static_cast<int>(m), static_cast<int>(n)).real());
      CHECK(cells[n].imag() == M(static_cast<int>(m), static_cast<int>(n)).imag());
    }
  }
}

TEST_CASE("artifacts are byte-identical across runs and output targets") {
  const auto a = run("matrix --s 2,0 --t 1,0 --N 12 --format json");
  const auto b = run("matrix --s 2,0 --t 1,0 --N 12 --format json");
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(!a.out.empty());

  const auto artifact = tmp_dir() / "matrix.json";
  const auto c =
      run("matrix --s 2,0 --t 1,0 --N 12 --format json --output \"" +
          artifact.string() + "\"");
  REQUIRE(c.exit_code == 0);
  CHECK(c.out.empty());
  CHECK(slurp(artifact) == a.out);
}

TEST_CASE("eigen snaps near-unit determinants and reports eigenvalues") {
  // 1.41421356 misses sqrt(2) by ~4e-9; the determinant lands inside the
  // snap window and the element is rescaled onto the unit-determinant set.
  const auto r = run("eigen --s 0,1.41421356 --t 1,0 --nmax 2");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 3);
  const double q = std::sqrt(0.5);
  const cplx expected[3] = {{q, -q}, {-q, -q}, {-q, q}};
  for (int n = 0; n <= 2; ++n) {
    CHECK(j[n]["n"].get<int>() == n);
    const cplx lambda{j[n]["lambda"][0].get<double>(),
                      j[n]["lambda"][1].get<double>()};
    CHECK(std::abs(lambda - expected[n]) < 1e-7);
    CHECK(j[n]["residual"].get<double>() < 1e-6);
  }

  // Residuals are positive, so an absurd threshold flips the exit status
  // while the artifact itself stays well formed.
  const auto strict = run("eigen --s 0,1.41421356 --t 1,0 --nmax 1 --tol 1e-30");
  CHECK(strict.exit_code == 1);
  CHECK(nlohmann::json::parse(strict.out).is_array());

  const auto bad = run("eigen --s 2,0 --t 1,0 --nmax 1");
  CHECK(bad.exit_code == 2);
  CHECK(contains(bad.err, "\"error\":\"NotUnitary\""));
}

TEST_CASE("compose reports the projective sign") {
  auto r = run("compose --s1 0,1 --t1 0,0 --s2 0,1 --t2 0,0");
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["s"][0].get<double>() == -1.0);
  CHECK(j["s"][1].get<double>() == 0.0);
  CHECK(j["t"][0].get<double>() == 0.0);
  CHECK(j["t"][1].get<double>() == 0.0);
  CHECK(j["sign"].get<double>() == 1.0);

  // Squaring a rotation by 3*pi/4 crosses the branch cut of the square
  // root, so the realized sign is -1.
  const std::string q = "0.70710678118654757";
  r = run("compose --s1 -" + q + "," + q + " --t1 0,0 --s2 -" + q + "," + q +
          " --t2 0,0");
  REQUIRE(r.exit_code == 0);
  j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j["s"][0].get<double>()) < 1e-12);
  CHECK(j["s"][1].get<double>() == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(j["sign"].get<double>() == -1.0);
}

TEST_CASE("hermite prints recursion coefficients lowest degree first") {
  const auto r = run("hermite --n 2 --delta 2,0");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["n"].get<int>() == 2);
  CHECK(j["delta"][0].get<double>() == 2.0);
  REQUIRE(j["coeffs"].size() == 3);
  CHECK(j["coeffs"][0][0].get<double>() == -1.0);
  CHECK(j["coeffs"][1][0].get<double>() == 0.0);
  CHECK(j["coeffs"][2][0].get<double>() == 4.0);
  for (int k = 0; k < 3; ++k) CHECK(j["coeffs"][k][1].get<double>() == 0.0);

  const auto bad = run("hermite --n 2 --delta 0,0");
  CHECK(bad.exit_code == 2);
  CHECK(contains(bad.err, "\"error\":\"ZeroDelta\""));
}

TEST_CASE("lct writes x,re,im lines on the requested output grid") {
  // The Gaussian is a fixed point of the fractional transform family.
  const auto r = run("lct --frft 1.5707963267948966 --out-lo -2 --out-hi 2 "
                     "--out-n 5");
  REQUIRE(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 5);
  const char* xs[5] = {"-2.0,", "-1.0,", "0.0,", "1.0,", "2.0,"};
  for (int i = 0; i < 5; ++i) {
    CHECK(lines[i].rfind(xs[i], 0) == 0);
    const double x = -2.0 + static_cast<double>(i);
    std::stringstream ss(lines[i]);
    std::string tok;
    std::getline(ss, tok, ',');
    std::getline(ss, tok, ',');
    const double re = std::stod(tok);
    std::getline(ss, tok, ',');
    const double im = std::stod(tok);
    CHECK(std::abs(re - std::exp(-x * x)) < 1e-6);
    CHECK(std::abs(im) < 1e-6);
  }

  // Dilation runs through the degenerate-b path: sqrt(1/r) f(x/r).
  const auto d = run("lct --dilate 2 --out-lo -1 --out-hi 1 --out-n 3");
  REQUIRE(d.exit_code == 0);
  const auto dl = lines_of(d.out);
  REQUIRE(dl.size() == 3);
  std::stringstream ss(dl[2]);
  std::string tok;
  std::getline(ss, tok, ',');
  CHECK(tok == "1.0");
  std::getline(ss, tok, ',');
  CHECK(std::stod(tok) ==
        doctest::Approx(std::sqrt(0.5) * std::exp(-0.25)).epsilon(1e-6));

  const auto bad_input = tmp_dir() / "broken.json";
  std::ofstream(bad_input) << "{not json";
  const auto e = run("lct --frft 0.5 --input \"" + bad_input.string() + "\"");
  CHECK(e.exit_code == 2);
  CHECK(contains(e.err, "bad JSON"));
}

TEST_CASE("verify-theorem-e emits a deterministic passing report") {
  const auto f1 = tmp_dir() / "vth1.json";
  const auto f2 = tmp_dir() / "vth2.json";
  const auto a = run("verify-theorem-e --output \"" + f1.string() + "\"");
  const auto b = run("verify-theorem-e --output \"" + f2.string() + "\"");
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  const std::string report = slurp(f1);
  CHECK(report == slurp(f2));

  const auto j = nlohmann::json::parse(report);
  CHECK(j["seed"].get<int>() == 42);
  CHECK(j["nodes"].get<int>() == 64);
  CHECK(j["all_pass"].get<bool>() == true);
  REQUIRE(j["checks"].size() >= 1);
  for (const auto& c : j["checks"]) {
    CHECK(c["pass"].get<bool>() == true);
    CHECK(c["measured"].is_number());
  }
}

TEST_CASE("FOCKCANON_NODES is validated before any subcommand runs") {
  auto r = run("classify --s 2,0 --t 1,0", "FOCKCANON_NODES=abc");
  CHECK(r.exit_code == 2);
  CHECK(contains(r.err, "FOCKCANON_NODES"));

  r = run("eigen --s 0,1 --t 0,0 --nmax 1", "FOCKCANON_NODES=15");
  CHECK(r.exit_code == 2);
  CHECK(contains(r.err, "at least 16"));
}

TEST_CASE("help exits zero and names the subcommands") {
  const auto r = run("--help");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "classify"));
  CHECK(contains(r.out, "verify"));
}
