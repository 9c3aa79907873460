#include "nbint/errors.hpp"
#include "nbint/exact_linalg.hpp"
#include "nbint/multivariate.hpp"
#include "nbint/nbody.hpp"
#include "nbint/polynomial.hpp"
#include "nbint/quadratic_field.hpp"
#include "nbint/real_roots.hpp"

#include <doctest.h>

#include <complex>
#include <random>

using namespace nbint;

namespace {

QPoly from_roots(const std::vector<Rational>& roots) {
  QPoly p{Rational(1)};
  for (const auto& r : roots) p = p * QPoly{Rational(-r), Rational(1)};
  return p;
}

// Determinant by fraction-based Gaussian elimination (independent of Berkowitz).
Rational gauss_det(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

}  // namespace

TEST_CASE("rational literals") {
  CHECK(parse_rational("1/7") == Rational(1, 7));
  CHECK(parse_rational("-3/6") == Rational(-1, 2));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("2.5e-3") == Rational(1, 400));
  CHECK(parse_rational(" 12 ") == Rational(12));
  // Leading zeros must stay decimal.
  CHECK(parse_rational("0.29999999999999999") == parse_rational("29999999999999999/100000000000000000"));
  CHECK(parse_rational("08") == Rational(8));
  CHECK_THROWS_AS(parse_rational("1/0"), InputError);
  CHECK_THROWS_AS(parse_rational("abc"), InputError);
  CHECK_THROWS_AS(parse_rational(""), InputError);
  CHECK(to_string(Rational(-5, 10)) == "-1/2");
  CHECK(to_string(Rational(4)) == "4");
}

TEST_CASE("exact square roots and simplest fractions") {
  Rational r;
  CHECK(exact_sqrt(Rational(9, 4), r));
  CHECK(r == Rational(3, 2));
  CHECK_FALSE(exact_sqrt(Rational(2), r));
  CHECK_FALSE(exact_sqrt(Rational(-4), r));
  CHECK(simplest_between(Rational(1, 3) - Rational(1, 1000), Rational(1, 3) + Rational(1, 1000)) == Rational(1, 3));
  CHECK(simplest_between(Rational(-7, 5), Rational(-6, 5)) == Rational(-4, 3));
  CHECK(abs(to_real(Rational(1, 3)) - Real(1) / 3) < Real(1e-33));
}

TEST_CASE("polynomial arithmetic") {
  const QPoly p = from_roots({1, 1, -2});  // (x-1)^2 (x+2)
  CHECK(p.degree() == 3);
  CHECK(p.derivative() == QPoly{Rational(-3), Rational(0), Rational(3)});
  const auto dr = divide(p, QPoly{Rational(-1), Rational(1)});
  CHECK(dr.remainder.is_zero());
  CHECK(dr.quotient == from_roots({1, -2}));
  CHECK(gcd(p, p.derivative()) == from_roots({1}));
  CHECK(square_free_part(p) == from_roots({1, -2}));
  const auto sq = square_free_decomposition(p);
  REQUIRE(sq.size() == 2);
  CHECK(sq[0].first == from_roots({-2}));
  CHECK(sq[0].second == 1);
  CHECK(sq[1].first == from_roots({1}));
  CHECK(sq[1].second == 2);
  CHECK_THROWS_AS(gcd(QPoly{}, QPoly{}), InputError);
  // Taylor shift against direct evaluation.
  const QPoly s = p.taylor_shift(Rational(3, 2));
  for (int k = -3; k <= 3; ++k) CHECK(evaluate(s, Rational(k, 5)) == evaluate(p, Rational(k, 5) + Rational(3, 2)));
}

TEST_CASE("resultant and Sylvester determinant") {
  const QPoly f = from_roots({1, 2}), g = from_roots({3, -1});
  // Res(f, g) = lc(f)^deg(g) prod_{f(r)=0} g(r)
  CHECK(resultant(f, g) == evaluate(g, 1) * evaluate(g, 2));
  CHECK(resultant(f, from_roots({2, 5})) == 0);
  CHECK(resultant(f, QPoly{}) == 0);
  CHECK_THROWS_AS(resultant(QPoly{}, QPoly{}), InputError);

  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(-9, 9);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<std::vector<Rational>> a(5, std::vector<Rational>(5));
    for (auto& row : a)
      for (auto& x : row) x = Rational(d(rng), 1 + std::abs(d(rng)));
    CHECK(determinant(a) == gauss_det(a));
    // Cayley-Hamilton: p(A) = 0.
    const QPoly cp = characteristic_polynomial(a);
    std::vector<std::vector<Rational>> acc(5, std::vector<Rational>(5)), power(5, std::vector<Rational>(5));
    for (int i = 0; i < 5; ++i) power[i][i] = 1;
    for (int k = 0; k <= cp.degree(); ++k) {
      for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) acc[i][j] += cp.coefficient(k) * power[i][j];
      std::vector<std::vector<Rational>> next(5, std::vector<Rational>(5));
      for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
          for (int l = 0; l < 5; ++l) next[i][j] += power[i][l] * a[l][j];
      power = next;
    }
    for (const auto& row : acc)
      for (const auto& x : row) CHECK(x == 0);
  }
}

TEST_CASE("Sturm counting and isolation") {
  // (x - 1)(x - 2)(x + 3)(x^2 + 1)
  const QPoly p = from_roots({1, 2, -3}) * QPoly{Rational(1), Rational(0), Rational(1)};
  CHECK(count_real_roots(p, -10, 10) == 3);
  CHECK(count_real_roots(p, 0, 1) == 1);  // (0, 1] contains 1
  CHECK(count_real_roots(p, 1, 2) == 1);
  const auto iv = real_root_isolation(p);
  REQUIRE(iv.size() == 3);
  const std::vector<Rational> roots{-3, 1, 2};
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(iv[i].lo < roots[i]);
    CHECK(roots[i] < iv[i].hi);
    const auto refined = refine_root(p, iv[i], Rational(1, 1000000));
    CHECK(refined.hi - refined.lo <= Rational(1, 1000000));
    CHECK(refined.lo <= roots[i]);
    CHECK(roots[i] <= refined.hi);
    CHECK(rational_root_in(p, iv[i]) == roots[i]);
  }
  CHECK_THROWS_AS(real_root_isolation(QPoly{}), InputError);

  // Repeated roots are isolated once; irrational roots are not rational.
  const QPoly q = from_roots({Rational(2, 3), Rational(2, 3)}) * QPoly{Rational(-2), Rational(0), Rational(1)};
  const auto qi = real_root_isolation(q);
  REQUIRE(qi.size() == 3);
  CHECK_FALSE(rational_root_in(q, qi[0]).has_value());
  CHECK(rational_root_in(q, qi[1]) == Rational(2, 3));
  CHECK_FALSE(rational_root_in(q, qi[2]).has_value());
}

TEST_CASE("bisection oracle agrees with isolation") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> d(-20, 20);
  for (int trial = 0; trial < 10; ++trial) {
    QPoly p{Rational(d(rng)), Rational(d(rng)), Rational(d(rng)), Rational(d(rng)), Rational(1)};
    // Sign changes on a fine grid (offset so no grid point is a rational root of
    // small height) bound the number of distinct real roots from below.
    int changes = 0;
    const Rational offset(1, 997);
    Rational prev = evaluate(p, Rational(-30) + offset);
    for (int k = -2999; k <= 3000; ++k) {
      const Rational v = evaluate(p, Rational(k, 100) + offset);
      if ((v > 0) != (prev > 0)) ++changes;
      prev = v;
    }
    CHECK(static_cast<int>(real_root_isolation(p).size()) >= changes);
    CHECK(count_real_roots(p, -30, 30) == static_cast<int>(real_root_isolation(p).size()));
  }
}

TEST_CASE("polynomial text format") {
  const QPoly p{Rational(1, 2), Rational(0), Rational(-3)};
  CHECK(serialize(p) == "1/2 0 -3");
  CHECK(parse_polynomial("1/2 0 -3") == p);
  CHECK(parse_polynomial("0").is_zero());
  CHECK_THROWS_AS(parse_polynomial("1 x"), InputError);
}

TEST_CASE("quadratic field arithmetic") {
  const QuadraticNumber s2 = QuadraticNumber::root(2);
  const QuadraticNumber a = 1 + s2, b = 1 - s2;
  CHECK(a * b == QuadraticNumber(-1));
  CHECK(a / a == QuadraticNumber(1));
  CHECK(a.conjugate() == b);
  CHECK(b.sign() < 0);
  CHECK(a.norm() == -1);
  CHECK(s2 * s2 == QuadraticNumber(2));
  CHECK(abs(a.to_real() - (1 + sqrt(Real(2)))) < Real(1e-32));
  CHECK_THROWS_AS(s2 + QuadraticNumber::root(3), InputError);
  // 3 - 2 sqrt 2 is small and positive; 2 sqrt 2 - 3 negative.
  CHECK(QuadraticNumber(3, -2, 2).sign() > 0);
  CHECK(QuadraticNumber(-3, 2, 2).sign() < 0);
  CHECK((a * a).to_string() == "3+2*sqrt(2)");
}

TEST_CASE("exact row reduction") {
  ExactMatrix<Rational> a{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
  CHECK(exact_rank(a) == 2);
  const auto ns = exact_null_space(a);
  REQUIRE(ns.size() == 1);
  for (const auto& row : a) {
    Rational s = 0;
    for (std::size_t j = 0; j < 3; ++j) s += row[j] * ns[0][j];
    CHECK(s == 0);
  }
  CHECK(exact_rank(shifted(ExactMatrix<Rational>{{2, 0}, {0, 2}}, Rational(2))) == 0);
}

TEST_CASE("multivariate polynomials") {
  const MPoly m1 = MPoly::variable(0), m2 = MPoly::variable(1), m3 = MPoly::variable(2);
  const MPoly p = m1 * m2 - 3 * m3 * m3;
  CHECK(p.evaluate({Rational(2), Rational(3), Rational(1)}) == 3);
  CHECK(p.substitute(2, 1 - m1 - m2).evaluate({Rational(1, 4), Rational(1, 4), Rational(0)}) ==
        Rational(1, 16) - 3 * Rational(1, 4));
  CHECK(p.total_degree() == 2);
  Rational f;
  CHECK(proportional(2 * p, p, f));
  CHECK(f == 2);
  CHECK_FALSE(proportional(p + 1, p, f));
  const MPoly other = MPoly::with_names(MPoly::variable(0), {"x", "y", "z"});
  CHECK_THROWS_AS(other + m1, InputError);
}

TEST_CASE("aligned resultant matches the closed quadratic form") {
  const Polynomial<MPoly> q({MPoly(2), MPoly(3), MPoly(2)});
  const MPoly r = resultant(q, euler_quintic(false));
  const MPoly m1 = MPoly::variable(0), m2 = MPoly::variable(1), m3 = MPoly::variable(2);
  const MPoly closed = 7 * m2 * m2 - 35 * m1 * m2 - 35 * m2 * m3 + 56 * m1 * m1 + 63 * m1 * m3 + 56 * m3 * m3;
  Rational factor;
  REQUIRE(proportional(r, closed, factor));
  CHECK(factor == 1);
  CHECK(r.evaluate({Rational(1, 7), Rational(5, 7), Rational(1, 7)}) == 0);

  // Numerical oracle: lc(q)^5 prod L(rho_i) over the complex roots of q.
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  using C = std::complex<double>;
  const C disc = std::sqrt(C(9.0 - 16.0));
  const C r1 = (-3.0 + disc) / 4.0, r2 = (-3.0 - disc) / 4.0;
  const auto L = euler_quintic(false);
  for (int trial = 0; trial < 10; ++trial) {
    const std::array<Rational, 3> m{parse_rational(std::to_string(u(rng))), parse_rational(std::to_string(u(rng))),
                                    parse_rational(std::to_string(u(rng)))};
    auto Lat = [&](C x) {
      C acc = 0, pw = 1;
      for (const auto& c : L.coefficients()) {
        acc += static_cast<double>(to_real(c.evaluate(m))) * pw;
        pw *= x;
      }
      return acc;
    };
    const C oracle = std::pow(2.0, 5) * Lat(r1) * Lat(r2);
    const double exact = static_cast<double>(to_real(r.evaluate(m)));
    CHECK(std::abs(oracle - exact) <= 1e-9 * std::max(1.0, std::abs(exact)));
  }
}
