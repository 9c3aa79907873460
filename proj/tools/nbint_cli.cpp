// nbint: command-line front end.
//
// Exit codes: 0 analysis completed, 2 invalid input, 3 numerically
// inconclusive (a monodromy check could not decide or contradicted the table).

#include "nbint/errors.hpp"
#include "nbint/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace nbint;

namespace {

constexpr int kInvalidInput = 2;
constexpr int kInconclusive = 3;

Real parse_real(const std::string& text) { return to_real(parse_rational(text)); }

void emit(const Json& j, const std::string& summary_text, const std::string& json_path) {
  if (json_path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::cout << summary_text;
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    if (!out) throw InputError("cannot write " + json_path);
    out << j.dump(2) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Non-integrability analysis for homogeneous potentials of degree -1"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::string json_path;
  std::string tol_text, masses_text, grid_text = "1/100", c_text, h_text, lambda_text;
  std::string mono_tol_text = "1e-16", path_file;
  long long k_bound = 1000000;
  bool exact = false, with_monodromy = false;
  int n_min = 3, n_max = 12, residual_max_n = 64;

  auto* analyze = app.add_subcommand("analyze", "Darboux points, spectra, decoupling and verdicts for given masses");
  analyze->add_option("--masses", masses_text, "File or list: JSON array or whitespace separated decimals/rationals")
      ->required();
  analyze->add_option("--tol", tol_text, "Spectral clustering tolerance (default 1e-8)");
  analyze->add_option("--k-bound", k_bound, "Largest k searched in the allowed sets");
  analyze->add_flag("--exact", exact, "Use exact arithmetic where the inputs permit");
  analyze->add_flag("--with-monodromy", with_monodromy, "Cross-check each verdict with numerical monodromy");

  auto* equal = app.add_subcommand("equal-masses", "lambda(n) for the regular n-gon with equal masses");
  equal->add_option("--n-min", n_min, "Smallest n (>= 3)");
  equal->add_option("--n-max", n_max, "Largest n");
  equal->add_option("--k-bound", k_bound, "Largest k searched in the allowed sets");
  equal->add_option("--residual-max-n", residual_max_n, "Compute eigenvector residuals up to this n");

  auto* search = app.add_subcommand("search-3body", "Decoupling conditions for three bodies over the mass simplex");
  search->add_option("--grid", grid_text, "Grid step in (0, 0.1], decimal or rational");

  auto* table = app.add_subcommand("table", "Allowed eigenvalues per level; full table without arguments");
  table->add_option("--C", c_text, "Angular momentum");
  table->add_option("--H", h_text, "Energy");
  table->add_option("--lambda", lambda_text, "Eigenvalue to test");
  table->add_option("--k-bound", k_bound, "Largest k searched in the allowed sets");
  table->add_flag("--exact", exact, "Treat lambda as an exact rational");
  table->add_flag("--with-monodromy", with_monodromy, "Cross-check with numerical monodromy");

  auto* mono = app.add_subcommand("monodromy", "Monodromy generators of the normal-form equation");
  mono->add_option("--C", c_text, "Angular momentum (normal form H = C^2/2 - 1)")->required();
  mono->add_option("--lambda", lambda_text, "Eigenvalue")->required();
  mono->add_option("--tol", mono_tol_text, "Series truncation tolerance (default 1e-16)");
  mono->add_option("--path", path_file, "JSON waypoint list for an extra transport");

  auto* examples = app.add_subcommand("examples", "Three-dimensional example potentials and their first integrals");

  for (auto* sub : {analyze, equal, search, table, mono, examples})
    sub->add_option("--json", json_path, "Write the JSON report to this file ('-' prints JSON only)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return e.get_exit_code() == 0 ? code : kInvalidInput;
  }

  try {
    if (*analyze) {
      AnalysisOptions opt;
      if (!tol_text.empty()) opt.tol = parse_real(tol_text);
      opt.k_bound = k_bound;
      opt.exact = exact;
      opt.with_monodromy = with_monodromy;
      const auto rep = cmd_analyze(parse_masses(masses_text), opt);
      emit(to_json(rep), summary(rep), json_path);
      return rep.numerically_inconclusive ? kInconclusive : 0;
    }
    if (*equal) {
      const auto rep = cmd_equal_masses(n_min, n_max, k_bound, residual_max_n);
      emit(to_json(rep), summary(rep), json_path);
      return 0;
    }
    if (*search) {
      const auto rep = cmd_search_decoupling_3body(parse_rational(grid_text));
      emit(to_json(rep), summary(rep), json_path);
      return 0;
    }
    if (*table) {
      if (c_text.empty() && h_text.empty() && lambda_text.empty()) {
        emit(Json{{"table", table_text()}}, table_text(), json_path);
        return 0;
      }
      if (c_text.empty() || h_text.empty()) throw InputError("--C and --H are required together");
      AnalysisOptions opt;
      opt.k_bound = k_bound;
      opt.exact = exact;
      opt.with_monodromy = with_monodromy;
      std::optional<Complex> lambda;
      if (!lambda_text.empty()) lambda = Complex(parse_real(lambda_text));
      const auto r = cmd_table(Complex(parse_real(c_text)), Complex(parse_real(h_text)), lambda, opt);
      emit(to_json(r), (lambda ? "" : table_text()) + summary(r), json_path);
      if (r.verdict && r.verdict->certificate &&
          (r.verdict->disagreement || *r.verdict->certificate == Certificate::Inconclusive))
        return kInconclusive;
      return 0;
    }
    if (*mono) {
      std::optional<std::vector<Complex>> path;
      if (!path_file.empty()) {
        std::ifstream in(path_file);
        if (!in) throw InputError("cannot read " + path_file);
        Json j;
        try {
          j = Json::parse(in);
        } catch (const Json::exception& e) {
          throw InputError(std::string("invalid path JSON: ") + e.what());
        }
        path = waypoints_from_json(j);
      }
      const auto r = cmd_monodromy(Complex(parse_real(c_text)), Complex(parse_real(lambda_text)),
                                   parse_real(mono_tol_text), path);
      emit(to_json(r), summary(r), json_path);
      return (r.certificate == Certificate::Inconclusive || r.disagreement) ? kInconclusive : 0;
    }
    if (*examples) {
      const auto r = cmd_examples();
      emit(to_json(r), summary(r), json_path);
      return 0;
    }
  } catch (const InputError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const ClearanceError& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return kInconclusive;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
