#include "nbint/errors.hpp"
#include "nbint/variational.hpp"

#include <doctest.h>

using namespace nbint;

namespace {

// Frobenius recursion for u P~(u) u Y'' + Q(u) u Y' + u R(u) Y = 0, started at
// the smaller exponent rho with a_0 = 1; returns the left-over term at step N.
Complex frobenius_oracle(const std::vector<Complex>& pt, const std::vector<Complex>& q, const std::vector<Complex>& r,
                         const Complex& rho, int N) {
  auto at = [](const std::vector<Complex>& v, int k) { return k >= 0 && k < static_cast<int>(v.size()) ? v[k] : Complex(0); };
  auto f = [&](int k, const Complex& s) { return at(pt, k) * s * (s - Real(1)) + at(q, k) * s + at(r, k - 1); };
  std::vector<Complex> a{Complex(1)};
  for (int n = 1; n <= N; ++n) {
    Complex sum(0);
    for (int k = 1; k <= n; ++k) sum += f(k, Complex(Real(n - k)) + rho) * a[n - k];
    if (n == N) return sum;
    a.push_back(-sum / f(0, Complex(Real(n)) + rho));
  }
  return Complex(0);
}

Complex cx(double re, double im = 0) { return Complex(Real(re), Real(im)); }

SingularPoint finite(const Complex& z) { return {z, false, ""}; }
SingularPoint infinity_point() { return {Complex(0), true, "infinity"}; }

}  // namespace

TEST_CASE("levels and normal forms") {
  CHECK(level_class(cx(0), cx(1)).kind == LevelKind::ZeroC);
  CHECK(level_class(cx(2), cx(0)).kind == LevelKind::ZeroH);
  CHECK(level_class(cx(0), cx(0)).kind == LevelKind::BothZero);
  CHECK(level_class(cx(1), cx(-0.5)).kind == LevelKind::MinusHalf);
  CHECK(level_class(cx(2), cx(-0.125)).kind == LevelKind::MinusHalf);
  const LevelClass g = level_class(cx(3), cx(3.5));
  CHECK(g.kind == LevelKind::Generic);
  // The representative normal form has the same C^2 H.
  const Complex c = g.representative_C;
  CHECK(abs(c * c * (c * c / Real(2) - Real(1)) - cx(9 * 3.5)) < Real(1e-25));
  CHECK(abs(level_class(cx(1), cx(-0.5)).representative_C - cx(1)) < Real(1e-25));

  const auto nf = VariationalEquation::normal_form(cx(3), cx(0.5));
  CHECK(abs(nf.H - cx(3.5)) < Real(1e-30));
  CHECK(nf.P() == Polynomial<Complex>{cx(0), cx(-9), cx(2), cx(7)});
  CHECK(nf.Q() == Polynomial<Complex>{cx(9), cx(-1)});
  CHECK(nf.R() == cx(-0.5));
  const auto ex = VariationalEquation::normal_form_exact(Rational(2), Rational(2));
  CHECK(ex.exact());
  CHECK(*ex.H_exact == 0);
  CHECK_FALSE(VariationalEquation::from_level(cx(1), cx(2), cx(0.5)).exact());
}

TEST_CASE("allowed eigenvalue sets") {
  CHECK(allowed_lambda(LevelKind::ZeroC, cx(2)).matched_k == 2);
  CHECK(allowed_lambda(LevelKind::ZeroH, cx(5)).matched_k == 3);
  CHECK(allowed_lambda(LevelKind::ZeroH, cx(-1)).matched_k == 0);
  CHECK(allowed_lambda(LevelKind::ZeroC, cx(0)).matched_k == 1);
  CHECK_FALSE(allowed_lambda(LevelKind::ZeroC, cx(0.5)).abelian_possible);
  CHECK(allowed_lambda(LevelKind::MinusHalf, cx(-9)).matched_k == 3);
  CHECK_FALSE(allowed_lambda(LevelKind::MinusHalf, cx(9)).abelian_possible);
  CHECK(allowed_lambda(LevelKind::Generic, cx(0)).abelian_possible);
  CHECK(allowed_lambda(LevelKind::Generic, cx(-1)).abelian_possible);
  CHECK_FALSE(allowed_lambda(LevelKind::Generic, cx(0.5)).abelian_possible);
  CHECK_FALSE(allowed_lambda(LevelKind::Generic, cx(0, 1e-3)).abelian_possible);
  CHECK(allowed_lambda(LevelKind::BothZero, cx(0.5)).no_information);
  // k is bounded.
  CHECK_FALSE(allowed_lambda(LevelKind::ZeroC, cx(0.5 * 99 * 102), 50).abelian_possible);
  CHECK(allowed_lambda(LevelKind::ZeroC, cx(0.5 * 99 * 102), 100).matched_k == 100);

  for (long long k = 0; k <= 40; ++k) {
    CHECK(allowed_lambda_exact(LevelKind::ZeroC, Rational((k - 1) * (k + 2), 2)).matched_k == k);
    CHECK(allowed_lambda_exact(LevelKind::MinusHalf, Rational(-k * k)).matched_k == k);
  }
  CHECK_FALSE(allowed_lambda_exact(LevelKind::ZeroH, Rational(1, 2)).abelian_possible);
  CHECK_FALSE(allowed_lambda_exact(LevelKind::Generic, Rational(1, 1000000)).abelian_possible);
  CHECK(allowed_lambda_exact(LevelKind::Generic, Rational(-1)).abelian_possible);
}

TEST_CASE("singular points and confluences") {
  const auto s3 = singularities(cx(3));
  CHECK(s3.confluence == Confluence::None);
  REQUIRE(s3.points.size() == 4);
  CHECK(s3.points.back().at_infinity);
  bool found = false;
  for (const auto& p : s3.points)
    if (!p.at_infinity && abs(p.location + Real(9) / 7) < Real(1e-28)) found = true;
  CHECK(found);
  CHECK(singularities(cx(0)).confluence == Confluence::ZeroC);
  CHECK(singularities(cx(1)).confluence == Confluence::MergedWithOne);
  CHECK(singularities(sqrt(cx(2))).confluence == Confluence::ParabolicInfinity);
  CHECK(singularities(cx(1)).points.size() == 3);

  // C^2 H = -1/2 makes the quadratic factor a square: -t (t - 4)^2 / 4.
  const auto pts = finite_singular_points(VariationalEquation::from_level(cx(2), cx(-0.125), cx(0)));
  REQUIRE(pts.size() == 2);
  CHECK(std::min(abs(pts[0] - cx(4)), abs(pts[1] - cx(4))) < Real(1e-15));
  CHECK(finite_singular_points(VariationalEquation::from_level(cx(2), cx(-1), cx(0))).size() == 3);
}

TEST_CASE("indicial exponents and the Fuchs relation") {
  for (const Complex& c : {cx(3), cx(0.7, 0.4), cx(5)}) {
    for (const Complex& lambda : {cx(0.5), cx(-3), cx(1.2, 0.7)}) {
      const auto eq = VariationalEquation::normal_form(c, lambda);
      const auto sing = singularities(c);
      Complex sum(0);
      for (const auto& p : sing.points) {
        const auto [a, b] = indicial_exponents(eq, p);
        CHECK(a.real() >= b.real());
        sum += a + b;
      }
      // Fuchsian with m singular points (infinity included): sum = m - 2.
      CHECK(abs(sum - Complex(Real(sing.points.size() - 2))) < Real(1e-20));
      const auto e0 = indicial_exponents(eq, finite(cx(0)));
      CHECK(abs(e0.first - cx(2)) < Real(1e-25));
      CHECK(abs(e0.second) < Real(1e-25));
      const auto ei = indicial_exponents(eq, infinity_point());
      CHECK(abs(ei.first) < Real(1e-25));
      CHECK(abs(ei.second - cx(-1)) < Real(1e-25));
    }
  }
  const auto eq = VariationalEquation::normal_form(cx(3), cx(0.5));
  CHECK_THROWS_AS(indicial_exponents(eq, finite(cx(0.5))), NotSingular);
  CHECK_THROWS_AS(log_obstruction(eq, finite(cx(1))), NoObstructionDefined);
}

TEST_CASE("log obstruction against an independent Frobenius recursion") {
  for (const Complex& c : {cx(3), cx(1.3, -0.2), cx(0.9)}) {
    for (const Complex& H : {cx(3.5), cx(-0.2), cx(0.4, 0.1)}) {
      for (const Complex& lambda : {cx(0.5), cx(0), cx(-1), cx(2.5, 1), cx(-7)}) {
        const auto eq = VariationalEquation::from_level(c, H, lambda);
        const Complex c2 = c * c;
        // t = 0: P = t (-C^2 + 2 t + 2H t^2).
        const Complex o0 = frobenius_oracle({-c2, cx(2), Real(2) * H}, {c2, cx(-1)}, {-lambda}, cx(0), 2);
        CHECK(abs(log_obstruction(eq, finite(cx(0))) - o0) < Real(1e-25));
        CHECK(abs(o0 + lambda * (Real(1) + lambda) / c2) < Real(1e-25));
        // t = 1/u: u (2H + 2u - C^2 u^2) u Y'' + (4H + 5u - 3C^2 u^2) u Y' - lambda u Y = 0 after
        // one factor of u is taken out.
        const Complex oi =
            frobenius_oracle({Real(2) * H, cx(2), -c2}, {Real(4) * H, cx(5), Real(-3) * c2}, {-lambda}, cx(-1), 1);
        CHECK(abs(log_obstruction(eq, infinity_point()) - oi) < Real(1e-25));
      }
    }
  }
  // Generic regime: the obstruction at 0 vanishes exactly on the allowed set.
  for (const double lambda : {0.0, -1.0, 0.5, 2.0, -9.0, -4.0}) {
    const auto eq = VariationalEquation::normal_form(cx(3), cx(lambda));
    const bool zero = abs(log_obstruction(eq, finite(cx(0)))) < Real(1e-25);
    CHECK(zero == allowed_lambda(LevelKind::Generic, cx(lambda)).abelian_possible);
  }
}

TEST_CASE("local data at infinity") {
  const auto eq = VariationalEquation::normal_form(cx(3), cx(0.5));
  const LocalData d = local_data(eq, infinity_point());
  CHECK(d.regular);
  CHECK(d.order == 1);
  REQUIRE(d.p.size() >= 4);
  CHECK(abs(d.p[1] - cx(7)) < Real(1e-28));
  CHECK(abs(d.p[3] - cx(-9)) < Real(1e-28));
  CHECK(abs(d.q[0] - cx(14)) < Real(1e-28));
  CHECK(abs(d.q[1] - cx(5)) < Real(1e-28));
}

TEST_CASE("explicit solutions for lambda in {0, -1}") {
  for (const Complex& c2 : {cx(9), cx(1), cx(2), cx(0.3, 0.8)}) {
    for (const Complex& lambda : {cx(0), cx(-1)}) {
      const ExplicitSolution s = explicit_solution(c2, lambda);
      CHECK(s.residual <= Real(1e-12));
      CHECK(s.basis.size() == 2);
      // Derivatives against central differences.
      const Real h("1e-12");
      for (const auto& f : s.basis) {
        for (const Complex& t : {cx(0.3, 0.2), cx(-2, 1), cx(4, -3)}) {
          const Complex fd1 = (f.x(t + h) - f.x(t - h)) / Complex(2 * h);
          const Complex fd2 = (f.dx(t + h) - f.dx(t - h)) / Complex(2 * h);
          CHECK(abs(fd1 - f.dx(t)) <= Real(1e-10) * std::max(Real(1), Real(abs(f.dx(t)))));
          CHECK(abs(fd2 - f.ddx(t)) <= Real(1e-10) * std::max(Real(1), Real(abs(f.ddx(t)))));
        }
        // Substituted at points the library did not sample.
        const auto eq = VariationalEquation::normal_form_c2(c2, lambda);
        CHECK(substitution_residual(eq, f, {cx(0.1, 2.2), cx(-3, -0.5)}) <= Real(1e-12));
      }
    }
  }
  CHECK_THROWS_AS(explicit_solution(cx(9), cx(0.5)), InputError);
}

TEST_CASE("polynomial solutions") {
  auto search = [](long c2, Rational lambda) {
    return polynomial_solution_search(VariationalEquation::normal_form_exact(Rational(c2), lambda));
  };
  const auto one = search(9, 0);
  REQUIRE(one);
  CHECK(one->exact_verified);
  CHECK(abs(one->evaluate(cx(3.7)) / one->evaluate(cx(0.2)) - cx(1)) < Real(1e-25));

  const auto t2 = search(2, 2);
  REQUIRE(t2);
  CHECK(t2->exact_verified);
  CHECK(t2->residual == 0);
  CHECK(t2->factors.empty());
  REQUIRE(t2->exact_coefficients);
  CHECK(*t2->exact_coefficients == std::vector<Rational>{0, 0, 1});

  const auto lin = search(9, -1);
  REQUIRE(lin);
  CHECK(lin->exact_verified);
  REQUIRE(lin->exact_coefficients);
  CHECK(*lin->exact_coefficients == std::vector<Rational>{-9, 1});

  CHECK_FALSE(search(9, Rational(1, 2)));

  for (int k = 2; k <= 6; ++k) {
    const auto s = search(2, Rational((k - 1) * (k + 2), 2));
    REQUIRE(s);
    CHECK(s->exact_verified);
    // Independent residual of the returned closed form at a random point.
    const auto eq = VariationalEquation::normal_form_exact(Rational(2), Rational((k - 1) * (k + 2), 2));
    const Complex t = cx(0.37, 0.81), h(Real(1e-9));
    const Complex x = s->evaluate(t);
    const Complex x1 = (s->evaluate(t + h) - s->evaluate(t - h)) / (Real(2) * h);
    const Complex x2 = (s->evaluate(t + h) - Real(2) * x + s->evaluate(t - h)) / (h * h);
    const Complex p = eq.P()(t), q = eq.Q()(t);
    CHECK(abs(p * x2 + q * x1 + eq.R() * x) <= Real(1e-6) * (abs(p * x2) + abs(q * x1) + abs(x)));
    CHECK_FALSE(s->formula().empty());
  }
}

TEST_CASE("terminating hypergeometric brackets") {
  for (int k = 1; k <= 6; ++k) CHECK(hypergeometric_truncation(cx(1), cx(-k * k)).terminates);
  const auto four = hypergeometric_truncation(cx(1), cx(-4));
  CHECK(four.degree.has_value());
  CHECK_FALSE(four.brackets.empty());
  CHECK(hypergeometric_truncation(cx(2), cx(5)).terminates);
  CHECK_FALSE(hypergeometric_truncation(cx(1), cx(0.5)).terminates);
  CHECK_FALSE(hypergeometric_truncation(cx(2), cx(0.5)).terminates);
}
