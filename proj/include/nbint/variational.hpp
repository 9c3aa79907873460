#pragma once

// The variational equation along the conic orbit,
//   t(-C^2 + 2t + 2H t^2) X'' + (C^2 - t) X' = lambda X,
// written as P X'' + Q X' + R X = 0 with P = 2H t^3 + 2 t^2 - C^2 t,
// Q = C^2 - t, R = -lambda. The integrability table depends only on the level
// C^2 H, whose representative is the normal form H = C^2/2 - 1.

#include "nbint/numeric.hpp"
#include "nbint/polynomial.hpp"
#include "nbint/rational.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace nbint {

struct VariationalEquation {
  Complex C2;  // C^2 (the equation only involves C^2)
  Complex H;
  Complex lambda;
  /// Exact parameters when C^2, H and lambda are rational.
  std::optional<Rational> C2_exact, H_exact, lambda_exact;

  /// General (C, H) level.
  static VariationalEquation from_level(const Complex& C, const Complex& H, const Complex& lambda);
  /// Normal form H = C^2/2 - 1 from C^2.
  static VariationalEquation normal_form_c2(const Complex& C2, const Complex& lambda);
  static VariationalEquation normal_form(const Complex& C, const Complex& lambda) {
    return normal_form_c2(C * C, lambda);
  }
  /// Exact normal form; C^2 = 2 gives the parabolic case C = sqrt(2).
  static VariationalEquation normal_form_exact(const Rational& C2, const Rational& lambda);

  Polynomial<Complex> P() const;
  Polynomial<Complex> Q() const;
  Complex R() const { return -lambda; }
  bool exact() const { return C2_exact && H_exact && lambda_exact; }
};

enum class LevelKind { ZeroC, ZeroH, MinusHalf, Generic, BothZero };
std::string to_string(LevelKind k);

struct LevelClass {
  LevelKind kind;
  Complex representative_C;  // C of the normal form with the same C^2 H
};

/// Classifies the level (C, H). tol is used for C = 0, H = 0 and C^2 H = -1/2.
LevelClass level_class(const Complex& C, const Complex& H, const Real& tol = Real(1e-12));

struct Verdict {
  bool abelian_possible = false;
  std::optional<long long> matched_k;
  LevelKind regime = LevelKind::Generic;
  Complex lambda;
  /// BothZero: the table has no entry; "no obstruction from this method".
  bool no_information = false;
};

/// Membership of lambda in the allowed set of the regime:
///   ZeroC, ZeroH: (k-1)(k+2)/2;  MinusHalf: -k^2;  Generic: {0, -1};
///   BothZero: everything (no information). k ranges over 0..k_bound.
Verdict allowed_lambda(LevelKind regime, const Complex& lambda, long long k_bound = 1000000,
                       const Real& tol = Real(1e-9));
/// Exact membership test.
Verdict allowed_lambda_exact(LevelKind regime, const Rational& lambda, long long k_bound = 1000000);

enum class Confluence { None, ZeroC, MergedWithOne, ParabolicInfinity };
std::string to_string(Confluence c);

struct SingularPoint {
  Complex location;
  bool at_infinity = false;
  std::string label;
};

struct SingularityReport {
  std::vector<SingularPoint> points;  // finite points first, infinity last
  Confluence confluence = Confluence::None;
};

/// Singularities of the normal form: {0, 1, C^2/(2 - C^2), inf} with the
/// confluences C = 0, C = 1, C = sqrt(2) detected within tol.
SingularityReport singularities(const Complex& C, const Real& tol = Real(1e-12));
/// Distinct finite roots of P for an arbitrary equation (numeric, merged
/// within tol).
std::vector<Complex> finite_singular_points(const VariationalEquation& eq, const Real& tol = Real(1e-20));

/// Local data at a point: orders and leading Taylor coefficients of P, Q, R
/// in the local variable u (t = point + u, or t = 1/u at infinity).
struct LocalData {
  std::vector<Complex> p, q, r;  // ascending Taylor coefficients
  int order = 0;                 // order of vanishing of P
  bool regular = true;
};
LocalData local_data(const VariationalEquation& eq, const SingularPoint& point, const Real& tol = Real(1e-25));

/// Roots of the indicial equation, ordered by decreasing real part. Throws
/// NotSingular at an ordinary point; irregular points raise InputError.
std::pair<Complex, Complex> indicial_exponents(const VariationalEquation& eq, const SingularPoint& point);

/// Frobenius obstruction from the smaller exponent: the coefficient whose
/// vanishing is equivalent to a log-free second solution. Exponent difference
/// 0 always forces a logarithm (returns 1). Throws NoObstructionDefined for a
/// non-integer difference; series_order must be >= the difference.
Complex log_obstruction(const VariationalEquation& eq, const SingularPoint& point, int series_order = -1);

/// Closed-form solution with derivatives.
struct ClosedForm {
  std::string formula;
  std::function<Complex(const Complex&)> x, dx, ddx;
};

struct ExplicitSolution {
  std::vector<ClosedForm> basis;
  Real residual = 0;  // max relative residual over the sample grid
};

/// The closed forms for lambda in {0, -1}: generic C, C = 1 and C = sqrt(2).
/// Throws InputError for any other lambda (or C = 0).
ExplicitSolution explicit_solution(const Complex& C2, const Complex& lambda, int samples = 50);

/// max |P X'' + Q X' + R X| / (|P X''| + |Q X'| + |R X|) over sample points.
Real substitution_residual(const VariationalEquation& eq, const ClosedForm& f, const std::vector<Complex>& points);

/// Solution X = prod (t - s)^e_s * p(t), p polynomial.
struct PolynomialSolution {
  std::vector<std::pair<Complex, Complex>> factors;  // (s, e_s), e_s != 0
  std::vector<Complex> coefficients;                 // p, ascending
  std::optional<std::vector<std::pair<Rational, Rational>>> exact_factors;
  std::optional<std::vector<Rational>> exact_coefficients;
  Real residual = 0;
  bool exact_verified = false;  // operator applied to X vanishes identically
  std::string formula() const;
  Complex evaluate(const Complex& t) const;
};

/// Restricted Kovacic case-1 search on the normal form for (C^2, lambda).
std::optional<PolynomialSolution> polynomial_solution_search(const VariationalEquation& eq);

struct HypergeometricResult {
  bool terminates = false;
  std::optional<int> degree;  // degree of the terminating series
  std::vector<std::string> brackets;
};

/// Terminating 2F1 brackets in the confluent regimes C = sqrt(2) (C2 = 2) and
/// C = 1 (C2 = 1), trying both square-root branches.
HypergeometricResult hypergeometric_truncation(const Complex& C2, const Complex& lambda, const Real& tol = Real(1e-9));

}  // namespace nbint
