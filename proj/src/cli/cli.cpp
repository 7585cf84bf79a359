#include "specshift/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "specshift/doi.hpp"
#include "specshift/error.hpp"
#include "specshift/io.hpp"
#include "specshift/models.hpp"
#include "specshift/operator_path.hpp"
#include "specshift/ssf.hpp"
#include "specshift/test_function.hpp"

namespace specshift::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, sep)) parts.push_back(part);
  return parts;
}

int parse_int(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const long v = std::stol(text, &used);
    if (used == text.size()) return static_cast<int>(v);
  } catch (const std::logic_error&) {
  }
  throw ArgumentError(what + ": expected an integer, got '" + text + "'");
}

std::vector<std::string> model_args(const std::string& descriptor, std::size_t count) {
  const auto colon = descriptor.find(':');
  const std::vector<std::string> args = split(descriptor.substr(colon + 1), ',');
  if (args.size() != count) {
    throw ArgumentError("model descriptor '" + descriptor + "' expects " + std::to_string(count) + " arguments");
  }
  return args;
}

struct Settings {
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  std::string manifest;
  SsfOptions quad;
};

SsfOptions quadrature_options() {
  SsfOptions opts;
  if (const char* env = std::getenv("SPECSHIFT_QUAD_TOL"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0)) throw ArgumentError("SPECSHIFT_QUAD_TOL must be a positive number");
    opts.r_tol = v;
    opts.lambda_tol = std::min(opts.lambda_tol, v);
  }
  return opts;
}

json operator_report(const std::string& source, const HermitianOperator& h) {
  json j;
  j["source"] = source;
  if (fs::exists(source)) j["resolved"] = fs::absolute(source).lexically_normal().string();
  j["dim"] = h.dim();
  j["symmetrization_delta"] = h.symmetrization_delta();
  return j;
}

class Run {
 public:
  Run(std::string subcommand, const std::vector<std::string>& args, const Settings& settings)
      : settings_(settings) {
    manifest_["subcommand"] = std::move(subcommand);
    manifest_["argv"] = args;
    manifest_["inputs"] = json::object();
    manifest_["tolerances"] = json::object();
    manifest_["seed"] = settings.seed ? json(*settings.seed) : json(nullptr);
    manifest_["outputs"] = json::array();
    manifest_["tolerances"]["r_tol"] = settings.quad.r_tol;
    manifest_["tolerances"]["lambda_tol"] = settings.quad.lambda_tol;
  }

  HermitianOperator load(const std::string& key, const std::string& source) {
    HermitianOperator h = resolve_operator(source);
    manifest_["inputs"][key] = operator_report(source, h);
    report_["symmetrization_delta"][key] = h.symmetrization_delta();
    return h;
  }

  void input(const std::string& key, const std::string& value) { manifest_["inputs"][key] = value; }
  void tolerance(const std::string& key, double value) { manifest_["tolerances"][key] = value; }
  json& report() { return report_; }

  std::string output_path(const std::string& path) const {
    const fs::path p(path);
    return p.is_absolute() ? p.string() : (fs::path(settings_.out_dir) / p).string();
  }

  void wrote(const std::string& path) { manifest_["outputs"].push_back(path); }

  /// Writes the manifest next to the first output (or into out-dir) and
  /// prints the report.
  void finish(std::ostream& out) {
    std::string path = settings_.manifest;
    if (path.empty()) {
      const auto& outputs = manifest_["outputs"];
      path = outputs.empty() ? output_path(manifest_["subcommand"].get<std::string>() + ".manifest.json")
                             : outputs[0].get<std::string>() + ".manifest.json";
    }
    manifest_["report"] = report_;
    io::write_text_atomic(path, manifest_.dump(2) + "\n");
    out << report_.dump(2) << "\n";
  }

 private:
  const Settings& settings_;
  json manifest_;
  json report_ = json::object();
};

void require_dims(const HermitianOperator& a, const HermitianOperator& b, const char* where) {
  require_same_dim(where, a.dim(), b.dim());
}

std::vector<double> default_window(const HermitianOperator& h0, const HermitianOperator& h1) {
  const RealVector a = eigendecompose(h0).values;
  const RealVector b = eigendecompose(h1).values;
  const double lo = std::min(a.minCoeff(), b.minCoeff()) - 1.0;
  const double hi = std::max(a.maxCoeff(), b.maxCoeff()) + 1.0;
  return uniform_grid(lo, hi, 2);
}

SsfEstimate make_estimate(SsfMethod method, const HermitianOperator& h0, const HermitianOperator& h1,
                          const std::vector<double>& grid, const SsfOptions& quad) {
  switch (method) {
    case SsfMethod::counting_oracle:
      return ssf_counting_oracle(h0, h1, grid);
    case SsfMethod::path_integral:
      return ssf_path_estimate(linear_path(h0, h1 - h0), grid, quad);
    case SsfMethod::averaging:
      return ssf_averaging(linear_path(h0, h1 - h0), grid.empty() ? default_window(h0, h1) : grid, quad);
  }
  throw ArgumentError("unknown method");
}

struct SsfArgs {
  std::string h0, h1, method = "counting", grid, out = "ssf.csv";
};

int cmd_ssf(const SsfArgs& a, const std::vector<std::string>& argv, const Settings& s, std::ostream& out) {
  Run run("ssf", argv, s);
  const HermitianOperator h0 = run.load("h0", a.h0);
  const HermitianOperator h1 = run.load("h1", a.h1);
  require_dims(h0, h1, "ssf");
  const SsfMethod method = parse_method(a.method);
  const std::vector<double> grid = parse_grid(a.grid);
  run.input("method", method_name(method));
  run.input("grid", a.grid);
  const SsfEstimate est = make_estimate(method, h0, h1, grid, s.quad);

  const std::string path = run.output_path(a.out);
  io::SsfGridHeader header{method_name(method), s.quad.lambda_tol, s.quad.r_tol, a.grid, io::endpoints_hash(h0, h1)};
  io::write_ssf_grid_csv(path, *est.density, header);
  run.wrote(path);
  run.report()["output"] = path;
  run.report()["points"] = grid.size();
  run.finish(out);
  return ok;
}

struct KreinArgs {
  std::string h0, h1, f, method = "counting", xi_csv, grid;
};

int cmd_krein(const KreinArgs& a, const std::vector<std::string>& argv, const Settings& s, std::ostream& out) {
  Run run("krein-check", argv, s);
  const HermitianOperator h0 = run.load("h0", a.h0);
  const HermitianOperator h1 = run.load("h1", a.h1);
  require_dims(h0, h1, "krein-check");
  const TestFunction f = parse_test_function(a.f);
  run.input("f", a.f);
  const double tol = s.tol.value_or(1e-6);
  run.tolerance("residual", tol);

  SsfEstimate xi;
  if (!a.xi_csv.empty()) {
    run.input("xi_csv", a.xi_csv);
    xi = estimate_from_grid(io::read_ssf_grid_csv(a.xi_csv), SsfMethod::counting_oracle);
    run.report()["method"] = "grid:" + a.xi_csv;
  } else {
    const SsfMethod method = parse_method(a.method);
    run.input("method", method_name(method));
    const std::vector<double> grid = a.grid.empty() ? std::vector<double>{} : parse_grid(a.grid);
    xi = make_estimate(method, h0, h1, grid, s.quad);
    run.report()["method"] = method_name(method);
  }
  const double lhs = trace_difference(h0, h1, f);
  const double rhs = xi.pair(f.derivative_function());
  const double residual = std::abs(lhs - rhs);
  run.report()["lhs"] = lhs;
  run.report()["rhs"] = rhs;
  run.report()["residual"] = residual;
  run.report()["tolerance"] = tol;
  run.report()["pass"] = residual <= tol;
  run.finish(out);
  return residual <= tol ? ok : check_failed;
}

struct DoiArgs {
  std::string h0, h1, g, nodes = "201,33";
  double cutoff = 0.0;
  double identity_tol = 1e-9;
};

int cmd_doi(const DoiArgs& a, const std::vector<std::string>& argv, const Settings& s, std::ostream& out) {
  Run run("doi-check", argv, s);
  const HermitianOperator h0 = run.load("h0", a.h0);
  const HermitianOperator h1 = run.load("h1", a.h1);
  require_dims(h0, h1, "doi-check");
  const TestFunction g = parse_test_function(a.g);
  run.input("g", a.g);
  const std::vector<std::string> nodes = split(a.nodes, ',');
  if (nodes.size() != 2) throw ArgumentError("--nodes must look like n_s0,n_t");
  const int n_s0 = parse_int(nodes[0], "--nodes");
  const int n_t = parse_int(nodes[1], "--nodes");
  run.input("nodes", a.nodes);

  const PiMeasure pm = a.cutoff > 0.0 ? make_pi_measure(g, a.cutoff, n_s0, n_t) : make_pi_measure(g, n_s0, n_t);
  Matrix x = h1.matrix() - h0.matrix();
  if (s.seed) x = random_hermitian(h0.dim(), *s.seed).matrix();
  const Matrix spectral = doi_spectral(h1, h0, square(g), x);
  const DoiResult pi = doi_pi_integral(h1, h0, pm, x);
  const double scale = spectral.norm();
  const double discrepancy = scale > 0.0 ? (pi.value - spectral).norm() / scale : (pi.value - spectral).norm();
  const double identity = doi_identity_check(h1, h0, square(g));

  const double tol = s.tol.value_or(1e-4);
  run.tolerance("relative_discrepancy", tol);
  run.tolerance("identity_residual", a.identity_tol);
  run.tolerance("tail_threshold", pm.tail_threshold);
  json& r = run.report();
  r["cutoff"] = pm.cutoff;
  r["tail"] = pm.tail;
  r["n_s0"] = pm.n_s0;
  r["n_t"] = pm.n_t;
  r["relative_discrepancy"] = discrepancy;
  r["refinement_error"] = scale > 0.0 ? pi.error / scale : pi.error;
  r["identity_residual"] = identity;
  const bool pass = discrepancy <= tol && identity <= a.identity_tol;
  r["pass"] = pass;
  run.finish(out);
  return pass ? ok : check_failed;
}

struct PathArgs {
  std::string h0, h1, v, w, phi;
};

int cmd_path_independence(const PathArgs& a, const std::vector<std::string>& argv, const Settings& s,
                          std::ostream& out) {
  Run run("path-independence", argv, s);
  const HermitianOperator h0 = run.load("h0", a.h0);
  const HermitianOperator v = run.load("v", a.v);
  const HermitianOperator w = run.load("w", a.w);
  require_dims(h0, v, "path-independence");
  require_dims(h0, w, "path-independence");
  const TestFunction phi = parse_test_function(a.phi);
  run.input("phi", a.phi);
  if (!a.h1.empty()) {
    const HermitianOperator h1 = run.load("h1", a.h1);
    require_dims(h0, h1, "path-independence");
    const double gap = ((h0 + v).matrix() - h1.matrix()).norm();
    if (gap > 1e-12) throw EndpointMismatch("path-independence: H0 + V differs from H1 by " + std::to_string(gap));
  }
  const double tol = s.tol.value_or(1e-6);
  run.tolerance("difference", tol);
  const OperatorPath lin = linear_path(h0, v);
  const OperatorPath poly = polynomial_path(h0, v, w);
  const double xi_lin = ssf_path_integral(lin, phi, s.quad).value;
  const double xi_poly = ssf_path_integral(poly, phi, s.quad).value;
  const double diff = std::abs(xi_lin - xi_poly);
  run.report()["linear"] = xi_lin;
  run.report()["polynomial"] = xi_poly;
  run.report()["difference"] = diff;
  run.report()["pass"] = diff <= tol;
  run.finish(out);
  return diff <= tol ? ok : check_failed;
}

struct ModelArgs {
  std::string descriptor, out = "model.json";
};

int cmd_model(const ModelArgs& a, const std::vector<std::string>& argv, const Settings& s, std::ostream& out) {
  Run run("model", argv, s);
  const HermitianOperator h = run.load("model", a.descriptor);
  const std::string path = run.output_path(a.out);
  io::write_matrix_json(path, h.matrix());
  run.wrote(path);
  run.report()["output"] = path;
  run.report()["dim"] = h.dim();
  run.finish(out);
  return ok;
}

}  // namespace

HermitianOperator resolve_operator(const std::string& source) {
  const auto colon = source.find(':');
  const std::string kind = colon == std::string::npos ? "" : source.substr(0, colon);
  if (kind == "laplacian") {
    const auto args = model_args(source, 2);
    return discrete_laplacian({parse_int(args[0], "laplacian n"), parse_boundary(args[1])});
  }
  if (kind == "schrodinger") {
    const auto args = model_args(source, 3);
    const LatticeSpec spec{parse_int(args[0], "schrodinger n"), parse_boundary(args[1])};
    return schrodinger(spec, io::read_column_csv(args[2]));
  }
  if (kind == "dirac") {
    const auto args = model_args(source, 1);
    return discrete_dirac({parse_int(args[0], "dirac n"), Boundary::periodic});
  }
  if (kind == "gauge") {
    const auto args = model_args(source, 2);
    const LatticeSpec spec{parse_int(args[0], "gauge n"), Boundary::periodic};
    return gauge_pair(spec, io::read_column_csv(args[1])).d_a;
  }
  if (kind == "random") {
    const auto args = model_args(source, 2);
    return random_hermitian(parse_int(args[0], "random n"), static_cast<std::uint64_t>(parse_int(args[1], "seed")));
  }
  return io::read_matrix_json(source);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral shift function laboratory"};
  app.require_subcommand(1);
  Settings settings;
  double tol = 0.0;
  long long seed = 0;
  auto* tol_opt = app.add_option("--tol", tol, "Residual tolerance for checks");
  auto* seed_opt = app.add_option("--seed", seed, "Seed for random inputs");
  app.add_option("--out-dir", settings.out_dir, "Directory for outputs and manifests");
  app.add_option("--manifest", settings.manifest, "Manifest path (default: next to the first output)");
  app.fallthrough();

  SsfArgs ssf;
  auto* c_ssf = app.add_subcommand("ssf", "Tabulate xi on a grid");
  c_ssf->add_option("--h0", ssf.h0)->required();
  c_ssf->add_option("--h1", ssf.h1)->required();
  c_ssf->add_option("--method", ssf.method, "counting|path|averaging");
  c_ssf->add_option("--grid", ssf.grid, "a:b:steps")->required();
  c_ssf->add_option("--out", ssf.out, "CSV output");

  KreinArgs krein;
  auto* c_krein = app.add_subcommand("krein-check", "Tr(f(H1) - f(H0)) against xi(f')");
  c_krein->add_option("--h0", krein.h0)->required();
  c_krein->add_option("--h1", krein.h1)->required();
  c_krein->add_option("--f", krein.f, "bump:c,r | cap:a,b,eps | poly:c0,...")->required();
  auto* m_opt = c_krein->add_option("--method", krein.method, "counting|path|averaging");
  c_krein->add_option("--xi-csv", krein.xi_csv, "Pair against a stored grid instead")->excludes(m_opt);
  c_krein->add_option("--grid", krein.grid, "a:b:steps (averaging only)");

  DoiArgs doi;
  auto* c_doi = app.add_subcommand("doi-check", "Fourier vs spectral double operator integral");
  c_doi->add_option("--h0", doi.h0)->required();
  c_doi->add_option("--h1", doi.h1)->required();
  c_doi->add_option("--g", doi.g, "f = g^2")->required();
  c_doi->add_option("--nodes", doi.nodes, "n_s0,n_t");
  c_doi->add_option("--cutoff", doi.cutoff, "Fourier cutoff (default: automatic)");
  c_doi->add_option("--identity-tol", doi.identity_tol);

  PathArgs path;
  auto* c_path = app.add_subcommand("path-independence", "Linear vs polynomial path pairing");
  c_path->add_option("--h0", path.h0)->required();
  c_path->add_option("--v", path.v)->required();
  c_path->add_option("--w", path.w)->required();
  c_path->add_option("--phi", path.phi)->required();
  c_path->add_option("--h1", path.h1, "Optional endpoint, checked against H0 + V");

  ModelArgs model;
  auto* c_model = app.add_subcommand("model", "Materialize a model to a matrix file");
  c_model->add_option("descriptor", model.descriptor)->required();
  c_model->add_option("--out", model.out);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return parse_failure;
  }

  try {
    if (*tol_opt) settings.tol = tol;
    if (*seed_opt) {
      if (seed < 0) throw ArgumentError("--seed must be non-negative");
      settings.seed = static_cast<std::uint64_t>(seed);
    }
    settings.quad = quadrature_options();
    if (c_ssf->parsed()) return cmd_ssf(ssf, args, settings, out);
    if (c_krein->parsed()) return cmd_krein(krein, args, settings, out);
    if (c_doi->parsed()) return cmd_doi(doi, args, settings, out);
    if (c_path->parsed()) return cmd_path_independence(path, args, settings, out);
    if (c_model->parsed()) return cmd_model(model, args, settings, out);
  } catch (const DimensionMismatch& e) {
    err << "error: " << e.what() << "\n";
    return dimension_mismatch;
  } catch (const EndpointMismatch& e) {
    err << "error: " << e.what() << "\n";
    return dimension_mismatch;
  } catch (const CutoffError& e) {
    err << "error: " << e.what() << "\n";
    return cutoff_too_low;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << " (last two values " << e.previous() << ", " << e.last() << ")\n";
    return no_convergence;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return parse_failure;
  } catch (const UnsupportedError& e) {
    err << "error: " << e.what() << "\n";
    return parse_failure;
  }
  return parse_failure;
}

}  // namespace specshift::cli
