#include "nbint/errors.hpp"
#include "nbint/monodromy.hpp"

#include <doctest.h>

using namespace nbint;

namespace {

Complex cx(double re, double im = 0) { return Complex(Real(re), Real(im)); }

Real distance(const Matrix2& a, const Matrix2& b) {
  Matrix2 d;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) d[i][j] = a[i][j] - b[i][j];
  return norm2(d);
}

LoopPath open_path(const VariationalEquation& eq, std::vector<Complex> waypoints) {
  LoopPath p;
  p.base_point = waypoints.front();
  p.clearance = path_clearance(eq, waypoints);
  p.waypoints = std::move(waypoints);
  return p;
}

ContinuationOptions fast() {
  ContinuationOptions o;
  o.tolerance = Real(1e-20);
  o.estimate_error = false;
  return o;
}

}  // namespace

TEST_CASE("2x2 matrix helpers") {
  const Matrix2 a{{{cx(2), cx(1, 1)}, {cx(0.5), cx(-3)}}};
  const Matrix2 b{{{cx(1), cx(2)}, {cx(0), cx(1)}}};
  CHECK(distance(a * inverse(a), identity2()) < Real(1e-30));
  CHECK(abs(determinant(a * b) - determinant(a) * determinant(b)) < Real(1e-30));
  const Matrix2 d{{{cx(3), cx(0)}, {cx(0), cx(-1)}}};
  CHECK(abs(norm2(d) - 3) < Real(1e-30));
  CHECK(abs(deviation_from_identity(d) - 2) < Real(1e-30));
  const auto [l1, l2] = eigenvalues(a);
  CHECK(abs(l1 + l2 - (a[0][0] + a[1][1])) < Real(1e-30));
  CHECK(abs(l1 * l2 - determinant(a)) < Real(1e-29));
  CHECK(deviation_from_identity(commutator(d, d * d)) < Real(1e-30));
  CHECK(deviation_from_identity(commutator(b, d)) > Real(1));
  CHECK_THROWS_AS(inverse(Matrix2{}), Error);
}

TEST_CASE("loops and clearance") {
  const auto eq = VariationalEquation::normal_form(cx(3), cx(0.5));
  CHECK(abs(default_base_point(eq) - cx(0.5)) < Real(1e-30));
  const LoopPath l = loop_around(eq, cx(0.5), cx(1));
  CHECK(l.waypoints.front() == l.waypoints.back());
  CHECK(l.encircled.has_value());
  CHECK(l.clearance > Real(0.1));
  const LoopPath inf = loop_around_infinity(eq, cx(0.5));
  CHECK(inf.encircles_infinity);
  CHECK_THROWS_AS(custom_loop(eq, cx(0.5), {cx(0.5, 1), cx(0, 1), cx(0, -1), cx(0.5, -1)}), InputError);
  const LoopPath c = custom_loop(eq, cx(0.5), {cx(0.5, 1), cx(2, 1)});
  CHECK(c.waypoints.front() == cx(0.5));
  CHECK(c.waypoints.back() == cx(0.5));
  CHECK_THROWS_AS(continue_solution(eq, open_path(eq, {cx(0.5), cx(-0.5)})), ClearanceError);
}

TEST_CASE("contractible loops, composition and homotopy") {
  const auto eq = VariationalEquation::normal_form(cx(3), cx(0.5));
  const auto small = custom_loop(eq, cx(0.5), {cx(0.6, 0.1), cx(0.4, 0.2), cx(0.3, -0.1)});
  CHECK(deviation_from_identity(continue_solution(eq, small, fast()).entries) < Real(1e-10));
  // A big loop around no singular point (between 0 and 1 it only grazes the axis).
  const auto lens = custom_loop(eq, cx(0.5), {cx(0.5, 0.4), cx(0.9, 0.05), cx(0.5, -0.4), cx(0.1, 0.05)});
  CHECK(deviation_from_identity(continue_solution(eq, lens, fast()).entries) < Real(1e-10));

  // Transport over A then B is T_B T_A.
  const auto a = open_path(eq, {cx(0.5), cx(0.5, 1)});
  const auto b = open_path(eq, {cx(0.5, 1), cx(2, 1), cx(3, -0.5)});
  const auto ab = open_path(eq, {cx(0.5), cx(0.5, 1), cx(2, 1), cx(3, -0.5)});
  const Matrix2 ta = continue_solution(eq, a, fast()).entries, tb = continue_solution(eq, b, fast()).entries;
  CHECK(distance(continue_solution(eq, ab, fast()).entries, tb * ta) < Real(1e-8));

  // Two different counter-clockwise loops around t = 1.
  const Matrix2 m1 = continue_solution(eq, loop_around(eq, cx(0.5), cx(1)), fast()).entries;
  const Matrix2 m2 =
      continue_solution(eq, custom_loop(eq, cx(0.5), {cx(0.5, -0.5), cx(1.5, -0.5), cx(1.5, 0.5), cx(0.5, 0.5)}), fast())
          .entries;
  CHECK(distance(m1, m2) < Real(1e-8));
  CHECK(deviation_from_identity(m1 * m1) < Real(1e-8));
  const auto [e1, e2] = eigenvalues(m1);
  CHECK(std::min(abs(e1 - Real(1)) + abs(e2 + Real(1)), abs(e1 + Real(1)) + abs(e2 - Real(1))) < Real(1e-6));
}

TEST_CASE("Abel's identity along open paths") {
  for (const Complex& lambda : {cx(0.5), cx(-3, 1)}) {
    const auto eq = VariationalEquation::from_level(cx(1.5, 0.2), cx(0.3), lambda);
    const std::vector<Complex> w{cx(0.5, 0.1), cx(0.5, 2), cx(-3, 2), cx(-3, -2), cx(0.7, -0.3)};
    ContinuationOptions opts = fast();
    const FundamentalMatrix f = continue_solution(eq, open_path(eq, w), opts);
    const Complex expected = abel_factor(eq, w);
    CHECK(abs(determinant(f.entries) - expected) <= Real(1e-9) * abs(expected));
    CHECK(f.wronskian_deviation < Real(1e-9));
  }
}

TEST_CASE("local monodromy at t = 0 reflects the log obstruction") {
  // Exponents {0, 2} at t = 0: no logarithm exactly when the obstruction vanishes.
  for (const double lambda : {-1.0, 0.0, 0.5, 2.0}) {
    const auto eq = VariationalEquation::normal_form(cx(3), cx(lambda));
    const Matrix2 m0 = continue_solution(eq, loop_around(eq, cx(0.5), cx(0)), fast()).entries;
    const bool obstructed = abs(log_obstruction(eq, {cx(0), false, "0"})) > Real(1e-20);
    CHECK((deviation_from_identity(m0) > Real(1e-3)) == obstructed);
    if (!obstructed) CHECK(deviation_from_identity(m0) < Real(1e-10));
  }
}

TEST_CASE("generators, relations and certificates") {
  struct Case {
    Complex C2;
    double lambda;
    Certificate expected;
  };
  const std::vector<Case> cases{{cx(9), -1, Certificate::Abelian},
                                {cx(9), 0, Certificate::Abelian},
                                {cx(9), 0.5, Certificate::NonAbelian},
                                {cx(1), -9, Certificate::Abelian},
                                {cx(1), 0.5, Certificate::NonAbelian},
                                {cx(2), 2, Certificate::Abelian}};
  for (const auto& c : cases) {
    const auto eq = VariationalEquation::normal_form_c2(c.C2, cx(c.lambda));
    const MonodromyReport r = monodromy_generators(eq);
    INFO("C^2 = " << to_double(c.C2.real()) << ", lambda = " << c.lambda);
    CHECK(abelianity_certificate(r) == c.expected);
    CHECK(r.product_relation_deviation < Real(1e-6));
    CHECK(r.max_estimated_error < Real(1e-7));
    CHECK(r.max_wronskian_deviation < Real(1e-7));
    for (const auto& l : r.local) CHECK(l.exponent_match < Real(1e-6));
    for (const auto& g : r.generators) CHECK(g.steps > 0);
    // The infinity generator follows from the finite ones.
    Matrix2 prod = identity2();
    for (const auto& g : r.generators) prod = g.entries * prod;
    CHECK(distance(r.infinity.entries, inverse(prod)) < Real(1e-6) * std::max(Real(1), norm2(prod)));
  }
  // Generic, lambda = -1: the group itself is abelian; at 1/2 the logarithm
  // at t = 0 is seen locally.
  const MonodromyReport ab = monodromy_generators(VariationalEquation::normal_form(cx(3), cx(-1)));
  CHECK(ab.max_commutator_deviation <= Real(1e-8));
  const MonodromyReport na = monodromy_generators(VariationalEquation::normal_form(cx(3), cx(0.5)));
  CHECK(na.max_commutator_deviation >= Real(0.1));
  bool log0 = false;
  for (const auto& l : na.local)
    if (!l.at_infinity && abs(l.location) < Real(1e-20)) log0 = l.log_detected;
  CHECK(log0);
  for (const auto& l : ab.local) CHECK_FALSE(l.log_detected);
}

TEST_CASE("certificate thresholds") {
  MonodromyReport r;
  r.derived_commutator_deviation = Real(1e-12);
  CHECK(abelianity_certificate(r) == Certificate::Abelian);
  r.derived_commutator_deviation = Real(0.5);
  CHECK(abelianity_certificate(r) == Certificate::NonAbelian);
  r.derived_commutator_deviation = Real(5e-6);
  CHECK(abelianity_certificate(r) == Certificate::Inconclusive);
  // Large numerical error makes any outcome inconclusive.
  r.derived_commutator_deviation = Real(1e-12);
  r.max_estimated_error = Real(1e-5);
  CHECK(abelianity_certificate(r) == Certificate::Inconclusive);
  r.max_estimated_error = 0;
  r.max_wronskian_deviation = Real(1e-5);
  CHECK(abelianity_certificate(r) == Certificate::Inconclusive);
  // Tightening the threshold moves Abelian -> Inconclusive -> NonAbelian only.
  r.max_wronskian_deviation = 0;
  r.derived_commutator_deviation = Real(1e-3);
  auto rank = [](Certificate c) { return c == Certificate::Abelian ? 0 : (c == Certificate::Inconclusive ? 1 : 2); };
  int previous = 0;
  for (const Real& t : {Real(1e-1), Real(1e-2), Real(1e-3), Real(1e-4), Real(1e-5), Real(1e-6)}) {
    const int now = rank(abelianity_certificate(r, t));
    CHECK(now >= previous);
    previous = now;
  }
  CHECK(previous == 2);
  CHECK(to_string(Certificate::NonAbelian) != to_string(Certificate::Abelian));
}
