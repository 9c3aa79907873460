#pragma once

// Numerical monodromy of the variational equation. Solutions are continued
// along closed polylines with a Taylor method; transports act on initial data
// (X, X') at the base point, so the basis there is (1, 0), (0, 1).

#include "nbint/numeric.hpp"
#include "nbint/variational.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace nbint {

using Matrix2 = std::array<std::array<Complex, 2>, 2>;

Matrix2 identity2();
Matrix2 operator*(const Matrix2& a, const Matrix2& b);
Matrix2 inverse(const Matrix2& a);
Complex determinant(const Matrix2& a);
/// Spectral norm.
Real norm2(const Matrix2& a);
/// Spectral norm of a - I.
Real deviation_from_identity(const Matrix2& a);
std::pair<Complex, Complex> eigenvalues(const Matrix2& a);
/// a b a^-1 b^-1
Matrix2 commutator(const Matrix2& a, const Matrix2& b);

struct LoopPath {
  Complex base_point;
  std::vector<Complex> waypoints;  // closed polyline, first == last == base_point
  std::optional<Complex> encircled;
  bool encircles_infinity = false;
  Real clearance = 0;  // minimal distance from the polyline to a singular point
  std::string label;
};

/// Closed polyline from explicit waypoints; the base point is prepended and
/// appended when missing. Throws InputError when it passes within `min_clearance`
/// of a singular point of eq.
LoopPath custom_loop(const VariationalEquation& eq, const Complex& base_point, std::vector<Complex> waypoints,
                     const Real& min_clearance = Real(1e-8));

/// Real base point in (0, 1) in the middle of the widest gap between singular points.
Complex default_base_point(const VariationalEquation& eq);

/// Counter-clockwise loop around the finite singular point s, reached through
/// the upper half-plane; the circle has half the distance to the nearest other
/// singular point (or to the base point) as radius.
LoopPath loop_around(const VariationalEquation& eq, const Complex& base_point, const Complex& s, int polygon = 64);

/// Clockwise circle enclosing every finite singular point (a positive loop around infinity).
LoopPath loop_around_infinity(const VariationalEquation& eq, const Complex& base_point, int polygon = 64);

/// Distance from the polyline to the nearest singular point of eq.
Real path_clearance(const VariationalEquation& eq, const std::vector<Complex>& waypoints);

struct ContinuationOptions {
  Real tolerance = Real(1e-16);  // relative truncation of the local series
  Real step_ratio = Real(0.5);   // step / distance to the nearest singular point
  Real min_clearance = Real(1e-10);
  long max_steps = 200000;
  bool estimate_error = true;  // rerun with half the step ratio
};

struct FundamentalMatrix {
  Matrix2 entries;  // columns: (X, X') at the end of the two basis solutions
  LoopPath path;
  Real estimated_error = 0;
  /// |det - exp(-int Q/P)| relative to the expected value (Abel's identity).
  Real wronskian_deviation = 0;
  long steps = 0;
};

/// Transport of the fundamental matrix along a path (closed or not).
FundamentalMatrix continue_solution(const VariationalEquation& eq, const LoopPath& path,
                                    const ContinuationOptions& options = {});

/// exp(-int_path Q/P dt), computed from the partial fractions of Q/P.
Complex abel_factor(const VariationalEquation& eq, const std::vector<Complex>& waypoints);

struct LocalCheck {
  std::string label;
  Complex location;
  bool at_infinity = false;
  std::pair<Complex, Complex> exponents;
  /// max |eigenvalue - exp(2 pi i rho)| under the best pairing.
  Real exponent_match = 0;
  /// Integer exponent difference with a nontrivial Jordan block.
  bool log_detected = false;
};

struct MonodromyReport {
  Complex base_point;
  Real tolerance = 0;
  std::vector<FundamentalMatrix> generators;  // finite singular points by increasing real part
  FundamentalMatrix infinity;
  /// max over pairs of |[M_i, M_j] - I|.
  Real max_commutator_deviation = 0;
  /// max over pairs of commutators of |[[M_i, M_j], [M_k, M_l]] - I|; zero when
  /// the identity component of the Zariski closure is abelian.
  Real derived_commutator_deviation = 0;
  /// |M_inf M_m ... M_1 - I|.
  Real product_relation_deviation = 0;
  Real max_estimated_error = 0;
  Real max_wronskian_deviation = 0;
  std::vector<LocalCheck> local;
};

MonodromyReport monodromy_generators(const VariationalEquation& eq, std::optional<Complex> base_point = std::nullopt,
                                     const ContinuationOptions& options = {});

enum class Certificate { Abelian, NonAbelian, Inconclusive };
std::string to_string(Certificate c);

/// Proxy for "identity component abelian": derived commutators below the
/// threshold. Deviations in [threshold, 100 threshold] and integration errors
/// above threshold/10 are inconclusive.
Certificate abelianity_certificate(const MonodromyReport& report, const Real& threshold = Real(1e-6));

}  // namespace nbint
