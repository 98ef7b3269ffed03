#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsm/catalog.hpp"
#include "qsm/mapfile.hpp"
#include "qsm/oracle.hpp"
#include "qsm/report.hpp"
#include "qsm/structure.hpp"

namespace {

using nlohmann::json;
using namespace qsm;

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::division_by_zero: return "division_by_zero";
    case Errc::negative_input: return "negative_input";
    case Errc::parse_error: return "parse_error";
    case Errc::degree_mismatch: return "degree_mismatch";
    case Errc::dimension_mismatch: return "dimension_mismatch";
    case Errc::not_symmetric: return "not_symmetric";
    case Errc::not_spherical: return "not_spherical";
    case Errc::constant_map: return "constant_map";
    case Errc::not_orthogonal: return "not_orthogonal";
    case Errc::not_positive_definite: return "not_positive_definite";
    case Errc::condition_violated: return "condition_violated";
    case Errc::path_disagreement: return "path_disagreement";
    case Errc::not_proper_biharmonic: return "not_proper_biharmonic";
    case Errc::exact_rotation_unavailable: return "exact_rotation_unavailable";
    case Errc::radius_below_bound: return "radius_below_bound";
    case Errc::not_in_claimed_sphere: return "not_in_claimed_sphere";
    case Errc::inner_not_harmonic: return "inner_not_harmonic";
    case Errc::inner_energy_not_constant: return "inner_energy_not_constant";
    case Errc::unknown_name: return "unknown_name";
    case Errc::lambda_out_of_range: return "lambda_out_of_range";
    case Errc::inexact_lambda: return "inexact_lambda";
    case Errc::not_on_sphere: return "not_on_sphere";
    case Errc::bad_plan: return "bad_plan";
  }
  return "unknown";
}

/// Stable exit-code contract: 0 ok, 2 not spherical, 3 parse, 4 path
/// disagreement, 5 wrong verdict class for the command, 6 unknown name,
/// 7 oracle failure, 1 anything else.
int exit_code_for(Errc c) {
  switch (c) {
    case Errc::parse_error:
    case Errc::dimension_mismatch:
      return 3;
    case Errc::not_spherical:
    case Errc::constant_map:
    case Errc::not_symmetric:
      return 2;
    case Errc::path_disagreement:
      return 4;
    case Errc::not_proper_biharmonic:
      return 5;
    case Errc::unknown_name:
    case Errc::lambda_out_of_range:
    case Errc::inexact_lambda:
      return 6;
    case Errc::bad_plan:
    case Errc::not_on_sphere:
      return 7;
    default:
      return 1;
  }
}

json scalar_json(const Surd& v) { return surd_to_json(v); }
json scalar_json(double v) { return v; }

template <class T>
json vector_json(const std::vector<T>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(scalar_json(x));
  return out;
}

template <class T>
json matrix_json(const Matrix<T>& a) {
  json rows = json::array();
  for (int i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < a.cols(); ++j) row.push_back(scalar_json(a(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<Matrix<double>> to_double_matrices(const std::vector<Matrix<Surd>>& in) {
  std::vector<Matrix<double>> out;
  out.reserve(in.size());
  for (const auto& a : in) out.push_back(to_double_matrix(a));
  return out;
}

struct Options {
  std::string file;
  std::string backend = "exact";
  std::string path = "both";
  double tol = kDefaultTol;
  bool verbose = false;
  std::string out;
  int samples = 50;
  std::uint64_t seed = 0;
  double step = 1e-4;
  std::string name;
};

int finish(const json& report, bool verbose, int code) {
  std::cout << report.dump(2) << "\n";
  if (verbose) std::cerr << render_text(report);
  return code;
}

Path parse_path(const std::string& s) {
  if (s == "criterion") return Path::criterion;
  if (s == "direct") return Path::direct;
  return Path::both;
}

template <class T>
QuadMap<T> build_map(const ParsedMapFile& parsed, double tol);

template <>
QuadMap<Surd> build_map<Surd>(const ParsedMapFile& parsed, double tol) {
  return QuadMap<Surd>::symmetrized(parsed.matrices, tol);
}

template <>
QuadMap<double> build_map<double>(const ParsedMapFile& parsed, double tol) {
  return QuadMap<double>::symmetrized(to_double_matrices(parsed.matrices), tol);
}

template <class T>
json classification_json(const QuadMap<T>& map, const Classification<T>& cls) {
  json r = json::object();
  r["backend"] = ScalarTraits<T>::backend_name();
  r["certified"] = cls.certified;
  r["m"] = map.m();
  r["n"] = map.n();
  r["verdict"] = verdict_name(cls.verdict);
  r["evidence"] = cls.evidence;
  r["energy_density"] = cls.energy_constant ? scalar_json(*cls.energy_constant) : json("non-constant");
  json s = json::object();
  s["scalar"] = static_cast<bool>(cls.s_scalar);
  if (cls.s_scalar) s["alpha"] = scalar_json(*cls.s_scalar);
  r["S"] = std::move(s);
  r["laplacian"] = vector_json(cls.laplacian);
  r["laplacian_norm_sq"] = scalar_json(map.laplacian_norm_sq());
  r["trace_identity_residual"] = scalar_json(trace_identity_residual(map));
  if (cls.closed_form_coefficients) {
    r["closed_form_coefficients"] = json::array({scalar_json(cls.closed_form_coefficients->first), scalar_json(cls.closed_form_coefficients->second)});
  }
  return r;
}

template <class T>
int run_check(const Options& opt) {
  ParsedMapFile parsed = load_map_file(opt.file);
  QuadMap<T> map = build_map<T>(parsed, opt.tol);
  auto data = CoefficientVectors<T>::from_matrices(map.matrices());
  auto violations = coefficient_relation_violations(data, opt.tol);
  json r = json::object();
  r["backend"] = ScalarTraits<T>::backend_name();
  r["m"] = map.m();
  r["n"] = map.n();
  r["spherical"] = violations.empty();
  r["polynomial_certificate"] = "passed";
  json vj = json::array();
  for (const auto& v : violations) {
    json item = json::object();
    item["relation"] = v.relation;
    item["indices"] = json::array({v.i, v.j, v.k, v.l});
    item["value"] = scalar_json(v.value);
    vj.push_back(std::move(item));
  }
  r["coefficient_relation_violations"] = std::move(vj);
  if (!violations.empty()) return finish(r, opt.verbose, 2);
  return finish(r, opt.verbose, 0);
}

template <class T>
int run_classify(const Options& opt) {
  ParsedMapFile parsed = load_map_file(opt.file);
  QuadMap<T> map = build_map<T>(parsed, opt.tol);
  Classification<T> cls = map.classify(parse_path(opt.path));
  return finish(classification_json(map, cls), opt.verbose, 0);
}

template <class T>
int run_factorize(const Options& opt) {
  ParsedMapFile parsed = load_map_file(opt.file);
  QuadMap<T> map = build_map<T>(parsed, opt.tol);
  FactorizationResult<T> fr = factorize(map);
  json r = json::object();
  r["backend"] = ScalarTraits<T>::backend_name();
  r["m"] = map.m();
  r["n"] = map.n();
  r["verdict"] = verdict_name(Verdict::ProperBiharmonic);
  r["radius_sq"] = scalar_json(fr.radius_sq);
  r["last_component_constant"] = scalar_json(fr.last_component_constant);
  r["psi_harmonic"] = fr.psi_harmonic;
  r["psi_energy_density"] = scalar_json(fr.psi_energy_density);
  r["rotation"] = matrix_json(fr.rotation);
  r["laplacian_norm_sq"] = scalar_json(map.laplacian_norm_sq());
  if (!opt.out.empty()) {
    json psi = json::object();
    psi["m"] = map.m();
    psi["components"] = static_cast<int>(fr.psi_matrices.size());
    json mats = json::array();
    for (const auto& a : fr.psi_matrices) {
      if constexpr (ScalarTraits<T>::exact) {
        mats.push_back(matrix_to_json(a));
      } else {
        mats.push_back(matrix_json(a));
      }
    }
    psi["matrices"] = std::move(mats);
    psi["radius_sq"] = scalar_json(fr.radius_sq);
    psi["rotation"] = matrix_json(fr.rotation);
    write_text_file(opt.out, psi.dump(2) + "\n");
    r["out"] = opt.out;
  }
  return finish(r, opt.verbose, 0);
}

int run_catalog_list(const Options& opt) {
  json entries = json::array();
  for (const auto& name : catalog_names()) {
    CatalogEntry entry = catalog_get(name);
    json e = json::object();
    e["name"] = entry.name;
    e["m"] = entry.map.m();
    e["n"] = entry.map.n();
    e["verdict"] = verdict_name(entry.expected);
    e["description"] = entry.description;
    entries.push_back(std::move(e));
  }
  json r = json::object();
  r["catalog"] = std::move(entries);
  return finish(r, opt.verbose, 0);
}

int run_catalog_show(const Options& opt) {
  CatalogEntry entry = catalog_get(opt.name);
  Classification<Surd> cls = entry.map.classify(Path::both);
  json r = classification_json(entry.map, cls);
  r["name"] = entry.name;
  r["description"] = entry.description;
  r["expected"] = verdict_name(entry.expected);
  return finish(r, opt.verbose, 0);
}

int run_catalog_emit(const Options& opt) {
  CatalogEntry entry = catalog_get(opt.name);
  MapMetadata md;
  md.name = entry.name;
  md.description = entry.description;
  const std::string text = emit_map_file(entry.map.matrices(), md);
  if (opt.file == "-") {
    std::cout << text;
    return 0;
  }
  write_text_file(opt.file, text);
  json r = json::object();
  r["emitted"] = entry.name;
  r["file"] = opt.file;
  return finish(r, opt.verbose, 0);
}

template <class T>
int run_verify(const Options& opt) {
  ParsedMapFile parsed = load_map_file(opt.file);
  QuadMap<T> map = build_map<T>(parsed, opt.tol);
  QuadMap<double> dmap = map_to_double(map, std::max(opt.tol, kDefaultTol));
  SamplePlan plan;
  plan.count = opt.samples;
  plan.seed = opt.seed;
  plan.step = opt.step;
  validate_plan(plan);
  OracleReport report = run_oracle(dmap, plan);
  json r = json::object();
  r["backend"] = ScalarTraits<T>::backend_name();
  r["m"] = map.m();
  r["n"] = map.n();
  r["samples"] = plan.count;
  r["seed"] = plan.seed;
  r["step"] = plan.step;
  json checks = json::array();
  for (const auto& c : report.checks) {
    json cj = json::object();
    cj["name"] = c.name;
    cj["samples"] = c.samples;
    cj["max_rel_err"] = c.max_rel_err;
    cj["tolerance"] = c.tolerance;
    cj["pass"] = c.pass;
    checks.push_back(std::move(cj));
  }
  r["checks"] = std::move(checks);
  r["pass"] = report.pass;
  return finish(r, opt.verbose, report.pass ? 0 : 7);
}

template <class Fn>
int guarded(bool verbose, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    json r = json::object();
    r["error"] = {{"code", errc_name(e.code())}, {"message", e.what()}};
    std::cout << r.dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    (void)verbose;
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    json r = json::object();
    r["error"] = {{"code", "internal"}, {"message", e.what()}};
    std::cout << r.dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

void add_backend_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--backend", opt.backend, "Scalar backend")->check(CLI::IsMember({"exact", "float"}))->capture_default_str();
  cmd->add_option("--tol", opt.tol, "Float-backend comparison tolerance")->capture_default_str();
  cmd->add_flag("--verbose", opt.verbose, "Also render the report as text on stderr");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quadratic maps between unit spheres: certificates, classification, factorization"};
  app.require_subcommand(1);
  Options opt;

  CLI::App* check = app.add_subcommand("check", "Certify sphericity of a map file");
  check->add_option("file", opt.file, "Map file (JSON)")->required();
  add_backend_flags(check, opt);

  CLI::App* classify = app.add_subcommand("classify", "Classify a map file as Harmonic / ProperBiharmonic / Neither");
  classify->add_option("file", opt.file, "Map file (JSON)")->required();
  classify->add_option("--path", opt.path, "Classification path")->check(CLI::IsMember({"criterion", "direct", "both"}))->capture_default_str();
  add_backend_flags(classify, opt);

  CLI::App* factorize_cmd = app.add_subcommand("factorize", "Split a properly biharmonic map into a harmonic map into a radius-1/sqrt(2) sphere plus a constant");
  factorize_cmd->add_option("file", opt.file, "Map file (JSON)")->required();
  factorize_cmd->add_option("--out", opt.out, "Write the extracted map and rotation to this file");
  add_backend_flags(factorize_cmd, opt);

  CLI::App* catalog = app.add_subcommand("catalog", "Built-in example maps");
  catalog->require_subcommand(1);
  CLI::App* cat_list = catalog->add_subcommand("list", "List catalog names with dimensions and verdicts");
  cat_list->add_flag("--verbose", opt.verbose, "Also render the report as text on stderr");
  CLI::App* cat_show = catalog->add_subcommand("show", "Classify one catalog entry");
  cat_show->add_option("name", opt.name, "Catalog name")->required();
  cat_show->add_flag("--verbose", opt.verbose, "Also render the report as text on stderr");
  CLI::App* cat_emit = catalog->add_subcommand("emit", "Write one catalog entry as a map file");
  cat_emit->add_option("name", opt.name, "Catalog name")->required();
  cat_emit->add_option("file", opt.file, "Output file, or - for stdout")->required();
  cat_emit->add_flag("--verbose", opt.verbose, "Also render the report as text on stderr");

  CLI::App* verify = app.add_subcommand("verify", "Cross-check the symbolic engine against finite-difference geometry");
  verify->add_option("file", opt.file, "Map file (JSON)")->required();
  verify->add_option("--samples", opt.samples, "Sample point count")->capture_default_str();
  verify->add_option("--seed", opt.seed, "Sample seed")->capture_default_str();
  verify->add_option("--step", opt.step, "Finite-difference step")->capture_default_str();
  add_backend_flags(verify, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  const bool exact = opt.backend == "exact";
  if (check->parsed()) return guarded(opt.verbose, [&] { return exact ? run_check<Surd>(opt) : run_check<double>(opt); });
  if (classify->parsed()) return guarded(opt.verbose, [&] { return exact ? run_classify<Surd>(opt) : run_classify<double>(opt); });
  if (factorize_cmd->parsed()) return guarded(opt.verbose, [&] { return exact ? run_factorize<Surd>(opt) : run_factorize<double>(opt); });
  if (catalog->parsed()) {
    if (cat_list->parsed()) return guarded(opt.verbose, [&] { return run_catalog_list(opt); });
    if (cat_show->parsed()) return guarded(opt.verbose, [&] { return run_catalog_show(opt); });
    if (cat_emit->parsed()) return guarded(opt.verbose, [&] { return run_catalog_emit(opt); });
  }
  if (verify->parsed()) return guarded(opt.verbose, [&] { return exact ? run_verify<Surd>(opt) : run_verify<double>(opt); });
  return 1;
}
