// fockcanon command-line surface.
//
// Subcommands: classify, kernel, matrix, eigen, compose, lct, hermite,
// verify-theorem-e, verify. All artifacts are deterministic: fixed field
// order, fixed float formatting, fixed summation order in the library.
// Exit codes: 0 success, 1 failed verification checks, 2 invalid input
// (machine-readable error JSON on stderr).

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fockcanon/canonical_operator.hpp"
#include "fockcanon/json_out.hpp"
#include "fockcanon/lct_real.hpp"
#include "fockcanon/spectral.hpp"
#include "fockcanon/verify.hpp"

namespace fc = fockcanon;
using fc::cplx;

namespace {

// Complex flags are "re,im" pairs; a bare real is accepted as "re,0".
cplx parse_complex(const std::string& text, const std::string& flag) {
  const auto comma = text.find(',');
  const std::string re_part = text.substr(0, comma);
  const std::string im_part =
      comma == std::string::npos ? "0" : text.substr(comma + 1);
  std::size_t pos = 0;
  double re = 0.0, im = 0.0;
  try {
    re = std::stod(re_part, &pos);
    if (pos != re_part.size()) throw std::invalid_argument(re_part);
    im = std::stod(im_part, &pos);
    if (pos != im_part.size()) throw std::invalid_argument(im_part);
  } catch (const std::exception&) {
    throw fc::UsageError(flag + ": expected \"re,im\", got \"" + text + "\"");
  }
  return {re, im};
}

fc::RealSymplecticMatrix parse_matrix(const std::string& text) {
  std::vector<double> entries;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    try {
      entries.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw fc::UsageError("--matrix: bad entry \"" + item + "\"");
    }
  }
  if (entries.size() != 4)
    throw fc::UsageError("--matrix: expected \"a,b,c,d\", got \"" + text +
                         "\"");
  return {entries[0], entries[1], entries[2], entries[3]};
}

// Truncated decimal input ("0,1.41421356") misses SL membership by ~1e-8
// while the group tolerance is 1e-12. Inputs within 1e-6 of the unit
// determinant are rescaled onto SL; anything farther off is a real error
// and passes through for the library to reject.
fc::GroupElement snap_to_sl(const fc::GroupElement& g) {
  const double d = g.det();
  if (d > 0.0 && std::abs(d - 1.0) <= 1e-6) {
    const double scale = 1.0 / std::sqrt(d);
    return {g.s * scale, g.t * scale};
  }
  return g;
}

std::size_t default_nodes() {
  const char* env = std::getenv("FOCKCANON_NODES");
  if (env == nullptr) return 64;
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(env, &pos);
  } catch (const std::exception&) {
    pos = std::string::npos;
  }
  if (pos != std::string(env).size() || v < 1)
    throw fc::UsageError(std::string("FOCKCANON_NODES: bad value \"") + env +
                         "\"");
  return static_cast<std::size_t>(v);
}

void require_config(std::size_t nodes, int truncation) {
  if (nodes < 16) throw fc::UsageError("nodes: must be at least 16");
  if (truncation < 8) throw fc::UsageError("N: must be at least 8");
}

// Quadrature of functions with e^{|t| |z|^2 / (2|s|)} growth needs nodes in
// proportion to 1 / (1 - |t|/(2|s|)).
fc::QuadratureRule scaled_rule(const fc::GroupElement& g, std::size_t base) {
  const double ratio = std::abs(g.t) / (2.0 * std::abs(g.s));
  const double scale = 1.0 / (1.0 - ratio);
  const auto m = static_cast<std::size_t>(
      std::ceil(static_cast<double>(base) * scale));
  return fc::QuadratureRule::gauss_hermite(m);
}

void write_artifact(const std::string& path, const std::string& payload) {
  if (path.empty()) {
    std::fwrite(payload.data(), 1, payload.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw fc::UsageError("cannot open output file: " + path);
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
}

int cmd_classify(const std::string& s_text, const std::string& t_text,
                 const std::string& output) {
  const fc::GroupElement g = fc::make_gl(parse_complex(s_text, "--s"),
                                         parse_complex(t_text, "--t"));
  const fc::OperatorClass cls = fc::classify(g);
  fc::JsonWriter w;
  w.begin_object().key("class").value(fc::to_string(cls)).key("hs_norm_sq");
  if (cls == fc::OperatorClass::HilbertSchmidt)
    w.value(fc::hs_norm_sq(g));
  else
    w.null();
  w.end_object();
  write_artifact(output, w.str() + "\n");
  return 0;
}

int cmd_kernel(const std::string& s_text, const std::string& t_text,
               const std::string& z_text, const std::string& w_text,
               const std::string& output) {
  const fc::GroupElement g{parse_complex(s_text, "--s"),
                           parse_complex(t_text, "--t")};
  const cplx z = parse_complex(z_text, "--z");
  const cplx wpt = parse_complex(w_text, "--w");
  const cplx value = fc::kernel_eval(g, z, wpt);
  const bool in_fock = fc::kernel_in_fock(g);
  fc::JsonWriter w;
  w.begin_object()
      .key("value")
      .value(value)
      .key("in_fock")
      .value(in_fock)
      .key("norm");
  if (in_fock)
    w.value(fc::kernel_norm(g, wpt));
  else
    w.null();
  w.end_object();
  write_artifact(output, w.str() + "\n");
  return 0;
}

int cmd_matrix(const std::string& s_text, const std::string& t_text, int N,
               const std::string& method, std::size_t nodes,
               const std::string& format, const std::string& output) {
  require_config(nodes, N);
  const fc::GroupElement g{parse_complex(s_text, "--s"),
                           parse_complex(t_text, "--t")};
  Eigen::MatrixXcd M;
  if (method == "closed") {
    M = fc::matrix(g, N);
  } else if (method == "quadrature") {
    M = fc::matrix(g, N, fc::MatrixMethod::Quadrature,
                   fc::QuadratureRule::gauss_hermite(nodes));
  } else {
    throw fc::UsageError("--method: expected closed or quadrature");
  }

  std::string payload;
  if (format == "csv") {
    for (int m = 0; m < N; ++m) {
      for (int n = 0; n < N; ++n) {
        if (n > 0) payload += ',';
        payload += '"';
        payload += fc::json_double(M(m, n).real());
        payload += ',';
        payload += fc::json_double(M(m, n).imag());
        payload += '"';
      }
      payload += '\n';
    }
  } else if (format == "json") {
    fc::JsonWriter w;
    w.begin_object()
        .key("s")
        .value(g.s)
        .key("t")
        .value(g.t)
        .key("N")
        .value(N)
        .key("method")
        .value(method)
        .key("entries")
        .begin_array();
    for (int m = 0; m < N; ++m) {
      w.begin_array();
      for (int n = 0; n < N; ++n) w.value(M(m, n));
      w.end_array();
    }
    w.end_array().end_object();
    payload = w.str() + "\n";
  } else {
    throw fc::UsageError("--format: expected json or csv");
  }
  write_artifact(output, payload);
  return 0;
}

int cmd_eigen(const std::string& s_text, const std::string& t_text, int nmax,
              std::size_t nodes, double tol, const std::string& output) {
  require_config(nodes, 8);
  if (nmax < 0) throw fc::UsageError("--nmax: must be nonnegative");
  if (tol <= 0.0) throw fc::UsageError("--tol: must be positive");
  const fc::GroupElement g = snap_to_sl(fc::GroupElement{
      parse_complex(s_text, "--s"), parse_complex(t_text, "--t")});
  fc::SpectralData::compute(g);
  const fc::QuadratureRule rule = scaled_rule(g, nodes);

  bool all_below_tol = true;
  fc::JsonWriter w;
  w.begin_array();
  for (int n = 0; n <= nmax; ++n) {
    const cplx lambda = fc::eigenvalue(g, static_cast<unsigned>(n));
    const double residual =
        fc::eigen_residual(g, static_cast<unsigned>(n), rule);
    if (!(residual <= tol)) all_below_tol = false;
    w.begin_object()
        .key("n")
        .value(n)
        .key("lambda")
        .value(lambda)
        .key("residual")
        .value(residual)
        .end_object();
  }
  w.end_array();
  write_artifact(output, w.str() + "\n");
  return all_below_tol ? 0 : 1;
}

int cmd_compose(const std::string& s1_text, const std::string& t1_text,
                const std::string& s2_text, const std::string& t2_text,
                const std::string& output) {
  const fc::GroupElement g1 = snap_to_sl(fc::GroupElement{
      parse_complex(s1_text, "--s1"), parse_complex(t1_text, "--t1")});
  const fc::GroupElement g2 = snap_to_sl(fc::GroupElement{
      parse_complex(s2_text, "--s2"), parse_complex(t2_text, "--t2")});
  const auto [g, sign] = fc::compose_operators(g1, g2);
  fc::JsonWriter w;
  w.begin_object()
      .key("s")
      .value(g.s)
      .key("t")
      .value(g.t)
      .key("sign")
      .value(sign.value)
      .end_object();
  write_artifact(output, w.str() + "\n");
  return 0;
}

int cmd_hermite(int n, const std::string& delta_text,
                const std::string& output) {
  if (n < 0) throw fc::UsageError("--n: must be nonnegative");
  const cplx delta = parse_complex(delta_text, "--delta");
  const fc::Poly p = fc::generalized_hermite(static_cast<unsigned>(n), delta);
  fc::JsonWriter w;
  w.begin_object()
      .key("n")
      .value(n)
      .key("delta")
      .value(delta)
      .key("coeffs")
      .begin_array();
  for (const cplx& c : p.coeffs) w.value(c);
  w.end_array().end_object();
  write_artifact(output, w.str() + "\n");
  return 0;
}

fc::SampledRealFunction load_sampled_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw fc::UsageError("cannot open input file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw fc::UsageError(std::string("--input: bad JSON: ") + e.what());
  }
  fc::SampledRealFunction f;
  f.weight_kind = fc::WeightKind::Uniform;
  try {
    for (const auto& x : j.at("grid")) f.grid.push_back(x.get<double>());
    for (const auto& v : j.at("values"))
      f.values.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
  } catch (const nlohmann::json::exception& e) {
    throw fc::UsageError(
        std::string("--input: expected {\"grid\": [...], \"values\": "
                     "[[re,im], ...]}: ") +
        e.what());
  }
  // Trapezoid weights on a possibly nonuniform grid.
  const std::size_t n = f.grid.size();
  f.weights.resize(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double half = (f.grid[i + 1] - f.grid[i]) / 2.0;
    f.weights[i] += half;
    f.weights[i + 1] += half;
  }
  fc::validate(f);
  return f;
}

fc::SampledRealFunction load_preset(const std::string& preset) {
  // Presets decay below 1e-14 well inside [-8, 8]; 641 nodes keep the
  // trapezoid error under the CLI's verification budgets.
  if (preset == "gaussian") {
    return fc::SampledRealFunction::sample(
        [](double x) { return cplx{std::exp(-x * x), 0.0}; }, -8.0, 8.0, 641);
  }
  if (preset.rfind("hermite:", 0) == 0) {
    const std::string arg = preset.substr(8);
    std::size_t pos = 0;
    int n = -1;
    try {
      n = std::stoi(arg, &pos);
    } catch (const std::exception&) {
      pos = std::string::npos;
    }
    if (pos != arg.size() || n < 0)
      throw fc::UsageError("--preset: bad hermite index \"" + arg + "\"");
    return fc::SampledRealFunction::sample(
        fc::hermite_gaussian(static_cast<unsigned>(n)), -8.0, 8.0, 641);
  }
  throw fc::UsageError("--preset: expected gaussian or hermite:n, got \"" +
                       preset + "\"");
}

struct LctTransform {
  bool use_frft = false;
  double alpha = 0.0;
  fc::RealSymplecticMatrix A;
};

int cmd_lct(const LctTransform& tr, const fc::SampledRealFunction& f,
            double out_lo, double out_hi, int out_n,
            const std::string& output) {
  if (out_n < 2 || !(out_hi > out_lo))
    throw fc::UsageError("output grid: need out-hi > out-lo and out-n >= 2");
  std::string payload;
  const double h = (out_hi - out_lo) / static_cast<double>(out_n - 1);
  for (int i = 0; i < out_n; ++i) {
    const double x = out_lo + h * static_cast<double>(i);
    const cplx v = tr.use_frft ? fc::frft(tr.alpha, f, x)
                               : fc::lct_apply(tr.A, f, x);
    payload += fc::json_double(x);
    payload += ',';
    payload += fc::json_double(v.real());
    payload += ',';
    payload += fc::json_double(v.imag());
    payload += '\n';
  }
  write_artifact(output, payload);
  return 0;
}

void append_report(fc::JsonWriter& w, const fc::VerifyOptions& opt,
                   const std::vector<fc::CheckResult>& checks,
                   bool all_pass) {
  w.begin_object()
      .key("seed")
      .value(static_cast<long long>(opt.seed))
      .key("nodes")
      .value(static_cast<long long>(opt.nodes))
      .key("truncation")
      .value(opt.truncation)
      .key("checks")
      .begin_array();
  for (const auto& c : checks) {
    w.begin_object()
        .key("check_id")
        .value(c.check_id)
        .key("description")
        .value(c.description)
        .key("measured")
        .value(c.measured)
        .key("expected")
        .value(c.expected)
        .key("tolerance")
        .value(c.tolerance)
        .key("semantics")
        .value(c.semantics)
        .key("pass")
        .value(c.pass)
        .end_object();
  }
  w.end_array().key("all_pass").value(all_pass).end_object();
}

int cmd_verify(const fc::VerifyOptions& opt, int criterion,
               const std::string& output) {
  require_config(opt.nodes, opt.truncation);
  const std::vector<fc::CheckResult> checks =
      criterion == 0 ? fc::run_acceptance(opt)
                     : fc::run_acceptance(opt, criterion);
  bool all_pass = true;
  for (const auto& c : checks) all_pass = all_pass && c.pass;
  fc::JsonWriter w;
  append_report(w, opt, checks, all_pass);
  write_artifact(output, w.str() + "\n");
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Canonical integral operators on the Fock space"};
  app.require_subcommand(1);

  std::string s_text, t_text, z_text, w_text = "0,0";
  std::string s2_text, t2_text;
  std::string output;
  std::string format = "json";
  std::string method = "closed";
  std::string delta_text = "1,0";
  std::string preset = "gaussian";
  std::string input_path;
  std::string matrix_text;
  int truncation = 64;
  int nmax = 8;
  int herm_n = 0;
  double tol = 1e-6;
  double frft_alpha = 0.0, fresnel_b = 0.0, chirp_c = 0.0, dilate_r = 1.0;
  double out_lo = -6.0, out_hi = 6.0;
  int out_n = 121;
  std::uint64_t seed = 42;
  std::size_t nodes = 64;  // reset from FOCKCANON_NODES below

  auto* classify = app.add_subcommand("classify", "Operator trichotomy");
  classify->add_option("--s", s_text, "parameter s as re,im")->required();
  classify->add_option("--t", t_text, "parameter t as re,im")->required();
  classify->add_option("--output", output, "artifact path (default stdout)");

  auto* kernel = app.add_subcommand("kernel", "Kernel value and norm");
  kernel->add_option("--s", s_text)->required();
  kernel->add_option("--t", t_text)->required();
  kernel->add_option("--z", z_text, "first kernel argument")->required();
  kernel->add_option("--w", w_text, "second kernel argument");
  kernel->add_option("--output", output);

  auto* matrix = app.add_subcommand("matrix", "Truncated operator matrix");
  matrix->add_option("--s", s_text)->required();
  matrix->add_option("--t", t_text)->required();
  matrix->add_option("--N", truncation, "truncation size");
  matrix->add_option("--method", method, "closed or quadrature");
  matrix->add_option("--nodes", nodes, "quadrature nodes per axis");
  matrix->add_option("--format", format, "json or csv");
  matrix->add_option("--output", output);

  auto* eigen = app.add_subcommand("eigen", "Eigenvalues and residuals");
  eigen->add_option("--s", s_text)->required();
  eigen->add_option("--t", t_text)->required();
  eigen->add_option("--nmax", nmax, "largest eigenvalue index");
  eigen->add_option("--nodes", nodes);
  eigen->add_option("--tol", tol, "residual threshold for exit status");
  eigen->add_option("--output", output);

  auto* compose = app.add_subcommand("compose", "Operator composition sign");
  compose->add_option("--s1", s_text)->required();
  compose->add_option("--t1", t_text)->required();
  compose->add_option("--s2", s2_text)->required();
  compose->add_option("--t2", t2_text)->required();
  compose->add_option("--output", output);

  auto* hermite = app.add_subcommand("hermite", "Generalized Hermite coefficients");
  hermite->add_option("--n", herm_n, "degree")->required();
  hermite->add_option("--delta", delta_text, "recursion parameter as re,im");
  hermite->add_option("--output", output);

  auto* lct = app.add_subcommand("lct", "Linear canonical transform");
  auto* tr_group = lct->add_option_group("transform", "exactly one transform");
  tr_group->add_option("--matrix", matrix_text, "entries a,b,c,d");
  tr_group->add_option("--frft", frft_alpha, "fractional Fourier angle");
  tr_group->add_option("--fresnel", fresnel_b, "Fresnel parameter b");
  tr_group->add_option("--chirp", chirp_c, "chirp multiplication rate");
  tr_group->add_option("--dilate", dilate_r, "dilation ratio");
  tr_group->require_option(1);
  lct->add_option("--preset", preset, "gaussian or hermite:n");
  lct->add_option("--input", input_path, "sampled function JSON");
  lct->add_option("--out-lo", out_lo);
  lct->add_option("--out-hi", out_hi);
  lct->add_option("--out-n", out_n);
  lct->add_option("--output", output);

  auto* vth = app.add_subcommand("verify-theorem-e",
                                 "Integral-equation criterion in isolation");
  vth->add_option("--seed", seed, "RNG seed, recorded in the report");
  vth->add_option("--nodes", nodes);
  vth->add_option("--output", output);

  auto* verify = app.add_subcommand("verify", "Full acceptance battery");
  verify->add_option("--seed", seed, "RNG seed, recorded in the report");
  verify->add_option("--nodes", nodes);
  verify->add_option("--N", truncation, "truncation size");
  verify->add_option("--output", output);

  try {
    nodes = default_nodes();
    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e);
    } catch (const CLI::ParseError& e) {
      throw fc::UsageError(e.what());
    }

    if (classify->parsed()) return cmd_classify(s_text, t_text, output);
    if (kernel->parsed())
      return cmd_kernel(s_text, t_text, z_text, w_text, output);
    if (matrix->parsed())
      return cmd_matrix(s_text, t_text, truncation, method, nodes, format,
                        output);
    if (eigen->parsed())
      return cmd_eigen(s_text, t_text, nmax, nodes, tol, output);
    if (compose->parsed())
      return cmd_compose(s_text, t_text, s2_text, t2_text, output);
    if (hermite->parsed()) return cmd_hermite(herm_n, delta_text, output);
    if (lct->parsed()) {
      LctTransform tr;
      if (tr_group->count("--matrix") > 0) {
        tr.A = parse_matrix(matrix_text);
      } else if (tr_group->count("--frft") > 0) {
        tr.use_frft = true;
        tr.alpha = frft_alpha;
      } else if (tr_group->count("--fresnel") > 0) {
        tr.A = {1.0, fresnel_b, 0.0, 1.0};
      } else if (tr_group->count("--chirp") > 0) {
        tr.A = {1.0, 0.0, chirp_c, 1.0};
      } else {
        if (dilate_r == 0.0) throw fc::UsageError("--dilate: must be nonzero");
        tr.A = {dilate_r, 0.0, 0.0, 1.0 / dilate_r};
      }
      const fc::SampledRealFunction f = input_path.empty()
                                            ? load_preset(preset)
                                            : load_sampled_json(input_path);
      return cmd_lct(tr, f, out_lo, out_hi, out_n, output);
    }
    fc::VerifyOptions opt;
    opt.seed = seed;
    opt.nodes = nodes;
    opt.truncation = truncation;
    if (vth->parsed()) return cmd_verify(opt, 6, output);
    return cmd_verify(opt, 0, output);
  } catch (const fc::Error& e) {
    std::string msg;
    fc::JsonWriter w;
    w.begin_object()
        .key("error")
        .value(e.name())
        .key("message")
        .value(e.what())
        .end_object();
    msg = w.str() + "\n";
    std::fwrite(msg.data(), 1, msg.size(), stderr);
    return 2;
  } catch (const std::exception& e) {
    const std::string msg = std::string("{\"error\":\"InternalError\",\"message\":\"") +
                            fc::json_escape(e.what()) + "\"}\n";
    std::fwrite(msg.data(), 1, msg.size(), stderr);
    return 2;
  }
}
