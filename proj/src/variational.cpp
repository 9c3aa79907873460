#include "nbint/variational.hpp"

#include "nbint/errors.hpp"
#include "nbint/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nbint {

// ---------------------------------------------------------------------------
// Equation

VariationalEquation VariationalEquation::from_level(const Complex& C, const Complex& H, const Complex& lambda) {
  VariationalEquation eq;
  eq.C2 = C * C;
  eq.H = H;
  eq.lambda = lambda;
  return eq;
}

VariationalEquation VariationalEquation::normal_form_c2(const Complex& C2, const Complex& lambda) {
  VariationalEquation eq;
  eq.C2 = C2;
  eq.H = C2 / Real(2) - Real(1);
  eq.lambda = lambda;
  return eq;
}

VariationalEquation VariationalEquation::normal_form_exact(const Rational& C2, const Rational& lambda) {
  VariationalEquation eq = normal_form_c2(Complex(to_real(C2)), Complex(to_real(lambda)));
  eq.C2_exact = C2;
  eq.H_exact = C2 / 2 - 1;
  eq.lambda_exact = lambda;
  return eq;
}

Polynomial<Complex> VariationalEquation::P() const {
  return Polynomial<Complex>({Complex(0), -C2, Complex(2), Real(2) * H});
}

Polynomial<Complex> VariationalEquation::Q() const { return Polynomial<Complex>({C2, Complex(-1)}); }

// ---------------------------------------------------------------------------
// Levels and the table

std::string to_string(LevelKind k) {
  switch (k) {
    case LevelKind::ZeroC:
      return "ZeroC";
    case LevelKind::ZeroH:
      return "ZeroH";
    case LevelKind::MinusHalf:
      return "MinusHalf";
    case LevelKind::BothZero:
      return "BothZero";
    case LevelKind::Generic:
      break;
  }
  return "Generic";
}

LevelClass level_class(const Complex& C, const Complex& H, const Real& tol) {
  const bool c0 = abs(C) <= tol, h0 = abs(H) <= tol;
  if (c0 && h0) return {LevelKind::BothZero, Complex(0)};
  if (c0) return {LevelKind::ZeroC, Complex(0)};
  if (h0) return {LevelKind::ZeroH, Complex(sqrt(Real(2)))};
  const Complex level = C * C * H;
  if (abs(level + Real(0.5)) <= tol) return {LevelKind::MinusHalf, Complex(1)};
  // C^4/2 - C^2 = level  =>  C^2 = 1 + sqrt(1 + 2 level).
  const Complex c2 = Real(1) + std::sqrt(Real(1) + Real(2) * level);
  return {LevelKind::Generic, std::sqrt(c2)};
}

namespace {

// Nearest integer to z if z is within tol of a nonnegative integer.
std::optional<long long> near_natural(const Complex& z, const Real& tol) {
  if (abs(z.imag()) > tol) return std::nullopt;
  const Real r = round(z.real());
  if (abs(z.real() - r) > tol || r < 0) return std::nullopt;
  return static_cast<long long>(r);
}

}  // namespace

Verdict allowed_lambda(LevelKind regime, const Complex& lambda, long long k_bound, const Real& tol) {
  if (k_bound < 0) throw InputError("k_bound must be nonnegative");
  Verdict v;
  v.regime = regime;
  v.lambda = lambda;
  std::optional<long long> k;
  switch (regime) {
    case LevelKind::BothZero:
      v.abelian_possible = true;
      v.no_information = true;
      return v;
    case LevelKind::Generic:
      v.abelian_possible = abs(lambda) <= tol || abs(lambda + Real(1)) <= tol;
      return v;
    case LevelKind::ZeroC:
    case LevelKind::ZeroH:
      k = near_natural((std::sqrt(Real(9) + Real(8) * lambda) - Real(1)) / Real(2), tol);
      if (k && abs(lambda - Complex(Real(*k - 1) * Real(*k + 2) / 2)) > tol * std::max(Real(1), Real(abs(lambda))))
        k.reset();
      break;
    case LevelKind::MinusHalf:
      k = near_natural(std::sqrt(-lambda), tol);
      if (k && abs(lambda + Complex(Real(*k) * Real(*k))) > tol * std::max(Real(1), Real(abs(lambda)))) k.reset();
      break;
  }
  if (k && *k <= k_bound) {
    v.abelian_possible = true;
    v.matched_k = k;
  }
  return v;
}

Verdict allowed_lambda_exact(LevelKind regime, const Rational& lambda, long long k_bound) {
  if (k_bound < 0) throw InputError("k_bound must be nonnegative");
  Verdict v;
  v.regime = regime;
  v.lambda = Complex(to_real(lambda));
  Rational root;
  std::optional<Rational> k;
  switch (regime) {
    case LevelKind::BothZero:
      v.abelian_possible = true;
      v.no_information = true;
      return v;
    case LevelKind::Generic:
      v.abelian_possible = lambda == 0 || lambda == -1;
      return v;
    case LevelKind::ZeroC:
    case LevelKind::ZeroH:
      if (exact_sqrt(9 + 8 * lambda, root)) k = (root - 1) / 2;
      break;
    case LevelKind::MinusHalf:
      if (exact_sqrt(-lambda, root)) k = root;
      break;
  }
  if (k && denominator_of(*k) == 1 && *k >= 0 && *k <= k_bound) {
    v.abelian_possible = true;
    v.matched_k = static_cast<long long>(numerator_of(*k));
  }
  return v;
}

// ---------------------------------------------------------------------------
// Singularities and local analysis

std::string to_string(Confluence c) {
  switch (c) {
    case Confluence::ZeroC:
      return "C=0: C^2/(2-C^2) merges with 0";
    case Confluence::MergedWithOne:
      return "C=1: C^2/(2-C^2) merges with 1";
    case Confluence::ParabolicInfinity:
      return "C=sqrt(2): C^2/(2-C^2) escapes to infinity";
    case Confluence::None:
      break;
  }
  return "none";
}

SingularityReport singularities(const Complex& C, const Real& tol) {
  SingularityReport out;
  const Complex c2 = C * C;
  SingularPoint zero{Complex(0), false, "0"}, one{Complex(1), false, "1"}, inf{Complex(0), true, "infinity"};
  if (abs(C) <= tol) {
    out.confluence = Confluence::ZeroC;
    zero.label = "0 (merged with C^2/(2-C^2))";
    out.points = {zero, one, inf};
  } else if (abs(c2 - Real(1)) <= tol) {
    out.confluence = Confluence::MergedWithOne;
    one.label = "1 (merged with C^2/(2-C^2))";
    out.points = {zero, one, inf};
  } else if (abs(c2 - Real(2)) <= tol) {
    out.confluence = Confluence::ParabolicInfinity;
    inf.label = "infinity (merged with C^2/(2-C^2))";
    out.points = {zero, one, inf};
  } else {
    out.points = {zero, one, {c2 / (Real(2) - c2), false, "C^2/(2-C^2)"}, inf};
  }
  return out;
}

std::vector<Complex> finite_singular_points(const VariationalEquation& eq, const Real& tol) {
  // P = t (2H t^2 + 2t - C^2)
  std::vector<Complex> roots{Complex(0)};
  const Complex a = Real(2) * eq.H, b(2), c = -eq.C2;
  if (abs(a) <= tol) {
    roots.push_back(-c / b);
  } else {
    const Complex disc = std::sqrt(b * b - Real(4) * a * c);
    roots.push_back((-b + disc) / (Real(2) * a));
    roots.push_back((-b - disc) / (Real(2) * a));
  }
  std::vector<Complex> out;
  for (const Complex& r : roots) {
    bool seen = false;
    for (const Complex& s : out) seen = seen || abs(r - s) <= Real(1e-15) * std::max(Real(1), Real(abs(s)));
    if (!seen) out.push_back(r);
  }
  return out;
}

namespace {

std::vector<Complex> cleaned(std::vector<Complex> c, const Real& tol) {
  Real scale = 0;
  for (const Complex& z : c) scale = std::max(scale, Real(abs(z)));
  for (Complex& z : c)
    if (abs(z) <= tol * (1 + scale)) z = Complex(0);
  return c;
}

int order_of(const std::vector<Complex>& c) {
  for (std::size_t k = 0; k < c.size(); ++k)
    if (c[k] != Complex(0)) return static_cast<int>(k);
  return 1 << 20;
}

Complex at(const std::vector<Complex>& c, int k) {
  return k >= 0 && k < static_cast<int>(c.size()) ? c[k] : Complex(0);
}

// f_j(x) = x(x-1) p_{j+a} + x q_{j+a-1} + r_{j+a-2}
Complex frob(const LocalData& d, int j, const Complex& x) {
  const int a = d.order;
  return x * (x - Real(1)) * at(d.p, j + a) + x * at(d.q, j + a - 1) + at(d.r, j + a - 2);
}

}  // namespace

LocalData local_data(const VariationalEquation& eq, const SingularPoint& point, const Real& tol) {
  LocalData d;
  if (point.at_infinity) {
    // t = 1/u:  u Pt(u) Y'' + (2 Pt(u) - u Qt(u)) Y' + R Y = 0 with the reversed
    // polynomials Pt(u) = u^3 P(1/u), Qt(u) = u Q(1/u).
    const Complex h2 = Real(2) * eq.H;
    d.p = {Complex(0), h2, Complex(2), -eq.C2};
    d.q = {Real(2) * h2, Complex(5), Real(-3) * eq.C2};
  } else {
    d.p = eq.P().taylor_shift(point.location).coefficients();
    d.q = eq.Q().taylor_shift(point.location).coefficients();
  }
  d.r = {eq.R()};
  d.p = cleaned(d.p, tol);
  d.q = cleaned(d.q, tol);
  d.r = cleaned(d.r, tol);
  d.order = order_of(d.p);
  d.regular = order_of(d.q) >= d.order - 1 && order_of(d.r) >= d.order - 2;
  return d;
}

std::pair<Complex, Complex> indicial_exponents(const VariationalEquation& eq, const SingularPoint& point) {
  const LocalData d = local_data(eq, point);
  if (d.order == 0) throw NotSingular("ordinary point");
  if (!d.regular) throw InputError("irregular singular point");
  // p_a x^2 + (q_{a-1} - p_a) x + r_{a-2} = 0
  const Complex a = at(d.p, d.order), b = at(d.q, d.order - 1) - a, c = at(d.r, d.order - 2);
  const Complex disc = std::sqrt(b * b - Real(4) * a * c);
  Complex x1 = (-b + disc) / (Real(2) * a), x2 = (-b - disc) / (Real(2) * a);
  // Snap tiny imaginary parts and exact zeros from rounding.
  for (Complex* x : {&x1, &x2}) {
    if (abs(x->imag()) < Real(1e-28)) *x = Complex(x->real());
    if (abs(*x) < Real(1e-28)) *x = Complex(0);
  }
  if (x2.real() > x1.real()) std::swap(x1, x2);
  return {x1, x2};
}

Complex log_obstruction(const VariationalEquation& eq, const SingularPoint& point, int series_order) {
  const LocalData d = local_data(eq, point);
  const auto [hi, lo] = indicial_exponents(eq, point);
  const Complex diff = hi - lo;
  const Real n_real = round(diff.real());
  if (abs(diff.imag()) > Real(1e-9) || abs(diff.real() - n_real) > Real(1e-9))
    throw NoObstructionDefined("exponent difference is not an integer");
  const int N = static_cast<int>(n_real);
  if (series_order < 0) series_order = N + 5;
  if (series_order < N) throw InputError("series order below the resonance");
  if (N == 0) return Complex(1);
  std::vector<Complex> c{Complex(1)};
  for (int m = 1; m < N; ++m) {
    Complex s(0);
    for (int k = 0; k < m; ++k) s += c[k] * frob(d, m - k, Real(k) + lo);
    c.push_back(-s / frob(d, 0, Real(m) + lo));
  }
  Complex obstruction(0);
  for (int k = 0; k < N; ++k) obstruction += c[k] * frob(d, N - k, Real(k) + lo);
  return obstruction;
}

// ---------------------------------------------------------------------------
// Closed forms

Real substitution_residual(const VariationalEquation& eq, const ClosedForm& f, const std::vector<Complex>& points) {
  const auto P = eq.P(), Q = eq.Q();
  const Complex R = eq.R();
  Real worst = 0;
  for (const Complex& t : points) {
    const Complex a = P(t) * f.ddx(t), b = Q(t) * f.dx(t), c = R * f.x(t);
    const Real num = abs(a + b + c), den = abs(a) + abs(b) + abs(c);
    if (num == 0) continue;
    worst = std::max(worst, Real(num / den));
  }
  return worst;
}

namespace {

std::vector<Complex> sample_points(int n) {
  std::vector<Complex> pts;
  for (int k = 0; k < n; ++k) {
    const Real th = Real(0.1) + 2 * pi() * k / n;
    pts.push_back(Complex(Real(0.2) + Real(3) * cos(th), Real(3) * sin(th)));
  }
  return pts;
}

ClosedForm sqrt_of_quadratic(const Complex& a, const Complex& b, const Complex& c, std::string name) {
  // S = sqrt(a t^2 + b t + c)
  auto g = [=](const Complex& t) { return (a * t + b) * t + c; };
  auto g1 = [=](const Complex& t) { return Real(2) * a * t + b; };
  ClosedForm f;
  f.formula = std::move(name);
  f.x = [=](const Complex& t) { return std::sqrt(g(t)); };
  f.dx = [=](const Complex& t) { return g1(t) / (Real(2) * std::sqrt(g(t))); };
  f.ddx = [=](const Complex& t) {
    const Complex s = std::sqrt(g(t));
    return Real(2) * a / (Real(2) * s) - g1(t) * g1(t) / (Real(4) * s * s * s);
  };
  return f;
}

ClosedForm polynomial_form(std::vector<Complex> c, std::string name) {
  const Polynomial<Complex> p(std::move(c));
  const auto d1 = p.derivative(), d2 = d1.derivative();
  return {std::move(name), [p](const Complex& t) { return p(t); }, [d1](const Complex& t) { return d1(t); },
          [d2](const Complex& t) { return d2(t); }};
}

}  // namespace

ExplicitSolution explicit_solution(const Complex& C2, const Complex& lambda, int samples) {
  const Real tol(1e-12);
  const bool minus_one = abs(lambda + Real(1)) <= tol, zero = abs(lambda) <= tol;
  if (!minus_one && !zero) throw InputError("closed forms exist only for lambda in {0, -1}");
  if (abs(C2) <= tol) throw InputError("no closed form implemented for C = 0");
  ExplicitSolution out;
  const Complex one(1);
  if (abs(C2 - Real(1)) <= tol) {
    if (minus_one) {
      out.basis.push_back(polynomial_form({-one, one}, "t - 1"));
      out.basis.push_back({"(2t - 1)/(t - 1)", [](const Complex& t) { return (Real(2) * t - Real(1)) / (t - Real(1)); },
                           [](const Complex& t) { return -Real(1) / ((t - Real(1)) * (t - Real(1))); },
                           [](const Complex& t) { return Real(2) / ((t - Real(1)) * (t - Real(1)) * (t - Real(1))); }});
    } else {
      out.basis.push_back(polynomial_form({one}, "1"));
      out.basis.push_back({"t + log(t - 1)", [](const Complex& t) { return t + std::log(t - Real(1)); },
                           [](const Complex& t) { return Real(1) + Real(1) / (t - Real(1)); },
                           [](const Complex& t) { return -Real(1) / ((t - Real(1)) * (t - Real(1))); }});
    }
  } else if (abs(C2 - Real(2)) <= tol) {
    if (minus_one) {
      out.basis.push_back(polynomial_form({Complex(-2), one}, "t - 2"));
      out.basis.push_back(sqrt_of_quadratic(Complex(0), one, -one, "sqrt(t - 1)"));
    } else {
      out.basis.push_back(polynomial_form({one}, "1"));
      out.basis.push_back({"sqrt(t - 1)(2 + t)",
                           [](const Complex& t) { return std::sqrt(t - Real(1)) * (Real(2) + t); },
                           [](const Complex& t) {
                             const Complex h = std::sqrt(t - Real(1));
                             return (Real(2) + t) / (Real(2) * h) + h;
                           },
                           [](const Complex& t) {
                             const Complex h = std::sqrt(t - Real(1));
                             return Real(1) / h - (Real(2) + t) / (Real(4) * h * h * h);
                           }});
    }
  } else {
    // g = (t - 1)(t C^2 - 2t + C^2) = (C^2 - 2) t^2 + 2t - C^2
    const Complex a = C2 - Real(2), b(2), c = -C2;
    const ClosedForm s = sqrt_of_quadratic(a, b, c, "sqrt((t - 1)(t C^2 - 2t + C^2))");
    if (minus_one) {
      out.basis.push_back(polynomial_form({-C2, one}, "t - C^2"));
      out.basis.push_back(s);
    } else {
      const Complex k = std::sqrt(a);
      out.basis.push_back(polynomial_form({one}, "1"));
      ClosedForm f;
      f.formula = "sqrt(g) - log(((C^2 - 2)t + 1)/sqrt(C^2 - 2) + sqrt(g))/sqrt(C^2 - 2), g = (t - 1)(t C^2 - 2t + C^2)";
      auto u = [=](const Complex& t) { return (a * t + Real(1)) / k + s.x(t); };
      auto u1 = [=](const Complex& t) { return a / k + s.dx(t); };
      f.x = [=](const Complex& t) { return s.x(t) - std::log(u(t)) / k; };
      f.dx = [=](const Complex& t) { return s.dx(t) - u1(t) / (k * u(t)); };
      f.ddx = [=](const Complex& t) {
        const Complex uu = u(t), du = u1(t);
        return s.ddx(t) - (s.ddx(t) * uu - du * du) / (k * uu * uu);
      };
      out.basis.push_back(f);
    }
  }
  const auto eq = VariationalEquation::normal_form_c2(C2, lambda);
  const auto pts = sample_points(samples);
  for (const ClosedForm& f : out.basis) out.residual = std::max(out.residual, substitution_residual(eq, f, pts));
  return out;
}

// ---------------------------------------------------------------------------
// Polynomial-type solutions

namespace {

using QPolyV = Polynomial<Rational>;

Rational rationalize(const Real& x, const Real& tol) {
  const Rational q = parse_rational(x.str(40, std::ios_base::scientific));
  const Rational w = parse_rational(tol.str(5, std::ios_base::scientific));
  return simplest_between(q - w, q + w);
}

std::optional<Rational> rationalize_complex(const Complex& z, const Real& tol) {
  if (abs(z.imag()) > tol) return std::nullopt;
  return rationalize(z.real(), tol);
}

// Coefficient polynomials of the cleared operator acting on p.
template <class F>
struct Cleared {
  Polynomial<F> a2, a1, a0;
};

template <class F>
Cleared<F> cleared_operator(const Polynomial<F>& P, const Polynomial<F>& Q, const F& R,
                            const std::vector<std::pair<F, F>>& factors) {
  const Polynomial<F> one = Polynomial<F>::constant(F(1));
  Polynomial<F> D = one, H1, sum_sq;
  std::vector<Polynomial<F>> others;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    Polynomial<F> rest = one;
    for (std::size_t j = 0; j < factors.size(); ++j)
      if (j != i) rest = rest * Polynomial<F>({F(0) - factors[j].first, F(1)});
    others.push_back(rest);
    D = D * Polynomial<F>({F(0) - factors[i].first, F(1)});
  }
  for (std::size_t i = 0; i < factors.size(); ++i) {
    H1 = H1 + factors[i].second * others[i];
    sum_sq = sum_sq + factors[i].second * (others[i] * others[i]);
  }
  Cleared<F> c;
  c.a2 = D * D * P;
  c.a1 = F(2) * (D * H1 * P) + D * D * Q;
  c.a0 = P * (H1 * H1 - sum_sq) + Q * D * H1 + R * (D * D);
  return c;
}

template <class F>
Polynomial<F> apply_cleared(const Cleared<F>& c, const Polynomial<F>& p) {
  return c.a2 * p.derivative().derivative() + c.a1 * p.derivative() + c.a0 * p;
}

struct Candidate {
  Complex location;
  std::vector<Complex> exponents;  // options for e_s, 0 first
};

}  // namespace

std::string PolynomialSolution::formula() const {
  std::ostringstream out;
  auto num = [](const Complex& z) {
    std::ostringstream s;
    if (abs(z.imag()) < Real(1e-25)) s << format_real(z.real(), 12);
    else s << "(" << format_real(z.real(), 12) << (z.imag() < 0 ? "-" : "+") << format_real(abs(z.imag()), 12) << "i)";
    return s.str();
  };
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& [s, e] = factors[i];
    out << "(t";
    if (exact_factors) {
      const Rational& sr = (*exact_factors)[i].first;
      if (sr != 0) out << (sr < 0 ? " + " : " - ") << to_string(sr < 0 ? Rational(-sr) : sr);
      out << ")^(" << to_string((*exact_factors)[i].second) << ")";
    } else {
      if (s != Complex(0)) out << " - " << num(s);
      out << ")^(" << num(e) << ")";
    }
    out << " * ";
  }
  out << "(";
  bool first = true;
  for (std::size_t j = coefficients.size(); j-- > 0;) {
    std::string c;
    if (exact_coefficients) {
      if ((*exact_coefficients)[j] == 0) continue;
      c = to_string((*exact_coefficients)[j]);
    } else {
      if (abs(coefficients[j]) < Real(1e-25)) continue;
      c = num(coefficients[j]);
    }
    const bool negative = !c.empty() && c[0] == '-';
    if (negative) c.erase(0, 1);
    if (first) out << (negative ? "-" : "");
    else out << (negative ? " - " : " + ");
    first = false;
    if (j == 0 || c != "1") out << c << (j > 0 ? " " : "");
    if (j > 0) out << "t" << (j > 1 ? "^" + std::to_string(j) : "");
  }
  if (first) out << "0";
  out << ")";
  return out.str();
}

Complex PolynomialSolution::evaluate(const Complex& t) const {
  Complex v = Polynomial<Complex>(coefficients)(t);
  for (const auto& [s, e] : factors) v *= std::pow(t - s, e);
  return v;
}

std::optional<PolynomialSolution> polynomial_solution_search(const VariationalEquation& eq) {
  const Real tol(1e-9);
  std::vector<Candidate> cands;
  for (const Complex& s : finite_singular_points(eq)) {
    Candidate c{s, {Complex(0)}};
    const auto [e1, e2] = indicial_exponents(eq, {s, false, ""});
    for (const Complex& e : {e1, e2}) {
      if (near_natural(e, tol)) continue;  // nonnegative integers are absorbed into p
      bool dup = false;
      for (const Complex& x : c.exponents) dup = dup || abs(x - e) <= tol;
      if (!dup) c.exponents.push_back(e);
    }
    cands.push_back(c);
  }
  const auto [i1, i2] = indicial_exponents(eq, {Complex(0), true, ""});

  const auto P = eq.P(), Q = eq.Q();
  const Complex R = eq.R();
  std::vector<std::size_t> choice(cands.size(), 0);
  for (;;) {
    std::vector<std::pair<Complex, Complex>> factors;
    Complex sum(0);
    for (std::size_t i = 0; i < cands.size(); ++i) {
      const Complex e = cands[i].exponents[choice[i]];
      sum += e;
      if (e != Complex(0)) factors.emplace_back(cands[i].location, e);
    }
    for (const Complex& inf : {i1, i2}) {
      const auto d = near_natural(-inf - sum, tol);
      if (!d || *d > 200) continue;
      const int deg = static_cast<int>(*d);
      const auto op = cleared_operator<Complex>(P, Q, R, factors);
      // Columns: image of t^j.
      std::vector<Polynomial<Complex>> cols;
      int rows = 0;
      for (int j = 0; j <= deg; ++j) {
        cols.push_back(apply_cleared(op, Polynomial<Complex>::monomial(Complex(1), static_cast<std::size_t>(j))));
        rows = std::max(rows, cols.back().degree() + 1);
      }
      CMatrix m = CMatrix::Zero(std::max(rows, 1), deg + 1);
      for (int j = 0; j <= deg; ++j)
        for (int i = 0; i <= cols[j].degree(); ++i) m(i, j) = cols[j].coefficient(static_cast<std::size_t>(i));
      const Real scale = std::max(Real(1), linalg::operator_norm(m));
      const CMatrix ker = linalg::null_space(m, Real(1e-24) * scale);
      if (ker.cols() == 0) continue;
      CVector v = ker.col(0);
      // Normalize the leading coefficient to 1.
      Eigen::Index lead = deg;
      while (lead > 0 && abs(v(lead)) < Real(1e-20)) --lead;
      v /= v(lead);
      PolynomialSolution sol;
      sol.factors = factors;
      for (Eigen::Index j = 0; j <= lead; ++j) sol.coefficients.push_back(v(j));

      // Residual at sample points via the cleared operator (exact identity).
      const Polynomial<Complex> p(sol.coefficients);
      const Polynomial<Complex> image = apply_cleared(op, p);
      Real num = 0, den = 0;
      for (const Complex& c : image.coefficients()) num = std::max(num, Real(abs(c)));
      for (const auto* poly : {&op.a2, &op.a1, &op.a0})
        for (const Complex& c : poly->coefficients()) den = std::max(den, Real(abs(c)));
      sol.residual = num / std::max(Real(1e-300), den * max_abs(v));

      if (eq.exact()) {
        // Rational reconstruction followed by an exact check of the operator.
        std::vector<std::pair<Rational, Rational>> ef;
        bool ok = true;
        for (const auto& [s, e] : factors) {
          auto rs = rationalize_complex(s, Real(1e-20)), re = rationalize_complex(e, Real(1e-20));
          if (!rs || !re) ok = false;
          else ef.emplace_back(*rs, *re);
        }
        std::vector<Rational> ec;
        for (const Complex& c : sol.coefficients) {
          auto rc = rationalize_complex(c, Real(1e-20));
          if (!rc) ok = false;
          else ec.push_back(*rc);
        }
        if (ok) {
          const Rational c2 = *eq.C2_exact, h = *eq.H_exact;
          const QPolyV Pe({Rational(0), -c2, Rational(2), 2 * h}), Qe({c2, Rational(-1)});
          const auto ope = cleared_operator<Rational>(Pe, Qe, Rational(-*eq.lambda_exact), ef);
          if (apply_cleared(ope, QPolyV(ec)).is_zero()) {
            sol.exact_factors = ef;
            sol.exact_coefficients = ec;
            sol.exact_verified = true;
            sol.residual = 0;
          }
        }
      }
      if (sol.exact_verified || sol.residual <= Real(1e-20)) return sol;
    }
    // Next combination.
    std::size_t i = 0;
    for (; i < cands.size(); ++i) {
      if (++choice[i] < cands[i].exponents.size()) break;
      choice[i] = 0;
    }
    if (i == cands.size()) break;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Hypergeometric truncation

HypergeometricResult hypergeometric_truncation(const Complex& C2, const Complex& lambda, const Real& tol) {
  HypergeometricResult out;
  auto fmt = [](const Complex& z) {
    std::ostringstream s;
    s << format_real(z.real(), 10);
    if (abs(z.imag()) > Real(1e-20)) s << (z.imag() < 0 ? "-" : "+") << format_real(abs(z.imag()), 10) << "i";
    return s.str();
  };
  auto check = [&](const Complex& a, const Complex& b, const Complex& c) {
    out.brackets.push_back("[" + fmt(a) + ", " + fmt(b) + "], [" + fmt(c) + "]");
    for (const Complex& x : {a, b}) {
      const auto k = near_natural(-x, tol);
      if (!k) continue;
      out.terminates = true;
      const int deg = static_cast<int>(*k);
      if (!out.degree || deg < *out.degree) out.degree = deg;
    }
  };
  const Complex one(1);
  if (abs(C2 - Real(2)) <= Real(1e-12)) {
    const Complex root = std::sqrt(Real(9) + Real(8) * lambda);
    for (const Complex& r : {root, -root}) {
      const Complex k = (r - one) / Real(2);
      check(one - k / Real(2), k / Real(2) + Real(1.5), Complex(Real(0.5)));
      check(Real(2) + k / Real(2), Real(1.5) - k / Real(2), Complex(Real(1.5)));
    }
  } else if (abs(C2 - Real(1)) <= Real(1e-12)) {
    const Complex root = std::sqrt(lambda);
    for (const Complex& r : {root, -root}) {
      const Complex is = imag_unit() * r;
      check(Real(2) - is, one - is, one - Real(2) * is);
      check(one + is, Real(2) + is, one + Real(2) * is);
    }
  } else {
    throw InputError("hypergeometric brackets apply only to C = 1 and C = sqrt(2)");
  }
  return out;
}

}  // namespace nbint
