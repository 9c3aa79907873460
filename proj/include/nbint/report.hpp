#pragma once

// Orchestration behind the command-line subcommands. Each command returns a
// plain result struct, a JSON encoding and a human-readable summary.

#include "nbint/dim3.hpp"
#include "nbint/json_io.hpp"
#include "nbint/monodromy.hpp"
#include "nbint/multivariate.hpp"
#include "nbint/nbody.hpp"
#include "nbint/spectral.hpp"
#include "nbint/variational.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace nbint {

inline constexpr const char* kToolVersion = "1.0.0";

/// The four table regimes with a nonempty allowed set, in report order.
const std::vector<LevelKind>& table_regimes();
/// C of the normal form used to exhibit each regime (Generic uses C = 3).
Complex representative_c(LevelKind regime);
/// Allowed set of the regime as text.
std::string allowed_set_text(LevelKind regime);

struct AnalysisOptions {
  Real tol = Real(1e-8);  // spectral clustering / decoupling tolerance
  long long k_bound = 1000000;
  bool exact = false;
  bool with_monodromy = false;
  Real monodromy_tol = Real(1e-16);
  Real abelian_threshold = Real(1e-6);
};

struct LevelVerdict {
  Verdict verdict;
  Complex representative_c;
  std::pair<Complex, Complex> exponents_at_zero;
  std::optional<Complex> obstruction_at_zero;
  std::optional<std::string> polynomial_solution;
  std::optional<Certificate> certificate;
  std::optional<MonodromyReport> monodromy;
  /// Monodromy certificate contradicts the table.
  bool disagreement = false;
};

/// Table verdict for lambda in one regime with its evidence; runs the
/// monodromy cross-check when requested.
LevelVerdict judge_level(LevelKind regime, const Complex& lambda, const std::optional<Rational>& exact_lambda,
                         const AnalysisOptions& options);
Json to_json(const LevelVerdict& v);

struct ConfigurationResult {
  std::string name;
  std::optional<DarbouxPoint> point;
  std::optional<SpectralReport> spectral;
  std::optional<DecouplingReport> decoupling;
  bool mandatory_spectrum = false;
  std::string error;  // set when the configuration could not be built
};

struct DecoupledLambda {
  std::string configuration;
  Complex lambda;
  std::optional<Rational> exact;
  std::vector<LevelVerdict> levels;
};

struct AnalysisReport {
  std::vector<Real> masses;  // normalized
  bool exact_masses = false;
  AnalysisOptions options;
  std::vector<ConfigurationResult> configurations;
  std::vector<DecoupledLambda> decoupled;
  /// Per regime: "non-integrable" or "method inconclusive".
  std::vector<std::pair<LevelKind, std::string>> regime_statements;
  std::string conclusion;
  bool numerically_inconclusive = false;
};

AnalysisReport cmd_analyze(const MassVector& masses, const AnalysisOptions& options = {});
Json to_json(const AnalysisReport& r);
std::string summary(const AnalysisReport& r);

struct EqualMassRow {
  int n = 0;
  Real lambda;
  std::optional<Real> residual;  // eigenvector residual, computed for n <= residual_max_n
  bool in_bounds = false;        // 0 < lambda < 2
  std::vector<Verdict> verdicts;
  std::string statement;
};

struct EqualMassReport {
  std::vector<EqualMassRow> rows;
  int residual_max_n = 0;
};

EqualMassReport cmd_equal_masses(int n_min, int n_max, long long k_bound = 1000000, int residual_max_n = 64);
Json to_json(const EqualMassReport& r);
std::string summary(const EqualMassReport& r);

/// The three decoupling mass families (up to permutation), as high-precision values.
struct MassFamily {
  std::string name;
  std::array<Real, 3> masses;
  std::optional<std::array<Rational, 3>> exact;
};
std::vector<MassFamily> decoupling_mass_families();
/// Closed form of the irrational triple.
std::array<Real, 3> irrational_triple();
/// 7m2^2 - 35m1m2 - 35m2m3 + 56m1^2 + 63m1m3 + 56m3^2
MPoly aligned_decoupling_form();
/// 3m2^2 - 3m2m3 - 3m1m2 + 3m3^2 - 3m1m3 + 3m1^2
MPoly lagrange_double_eigenvalue_form();
/// Res(2 rho^2 + 3 rho + 2, L) with L the Euler quintic.
MPoly aligned_resultant();

struct TripleCheck {
  std::string configuration;
  Complex double_eigenvalue;
  int algebraic = 0;
  int geometric = 0;
  Real rank_one_defect = 0;
  bool decoupled = false;
};
/// W at the (1, 1, j) (or conjugate) Lagrange configuration of the irrational triple.
TripleCheck irrational_triple_check(bool conjugate);

struct SearchReport {
  MPoly resultant;
  bool resultant_matches = false;
  Rational resultant_factor;
  Rational resultant_at_151;
  Rational grid_step;
  long grid_points = 0;
  std::vector<std::array<Rational, 3>> resultant_zeros;
  long resultant_sign_changes = 0;
  std::vector<std::array<Rational, 3>> lagrange_zeros;
  std::vector<MassFamily> families;
  std::vector<TripleCheck> triple;
};

SearchReport cmd_search_decoupling_3body(const Rational& grid_step);
Json to_json(const SearchReport& r);
std::string summary(const SearchReport& r);

struct TableResult {
  LevelClass level;
  std::optional<LevelVerdict> verdict;  // absent when no lambda was given
};

TableResult cmd_table(const Complex& C, const Complex& H, const std::optional<Complex>& lambda,
                      const AnalysisOptions& options = {});
Json to_json(const TableResult& r);
std::string summary(const TableResult& r);
/// The full table as text.
std::string table_text();

struct MonodromyResult {
  Complex C;
  Complex lambda;
  MonodromyReport report;
  Certificate certificate;
  Verdict table;
  bool disagreement = false;
  std::optional<FundamentalMatrix> custom;  // transport along a user path
};

MonodromyResult cmd_monodromy(const Complex& C, const Complex& lambda, const Real& tol,
                              const std::optional<std::vector<Complex>>& path = std::nullopt);
Json to_json(const MonodromyResult& r);
std::string summary(const MonodromyResult& r);

struct ExampleResult {
  Dim3Result result;
  std::vector<std::pair<LevelKind, Verdict>> verdicts;
  /// Regimes excluded by a cited classification rather than by computation.
  std::vector<LevelKind> cited_exclusions;
};

std::vector<ExampleResult> cmd_examples();
Json to_json(const std::vector<ExampleResult>& r);
std::string summary(const std::vector<ExampleResult>& r);

}  // namespace nbint
