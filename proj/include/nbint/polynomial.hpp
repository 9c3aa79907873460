#pragma once

// Dense univariate polynomials over an arbitrary commutative ring, stored with
// ascending coefficients. Field-only algorithms (division, gcd, square-free
// decomposition) are free functions below; the resultant is division-free.

#include "nbint/errors.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <utility>
#include <vector>

namespace nbint {

template <class Coeff>
class Polynomial {
 public:
  using coefficient_type = Coeff;

  Polynomial() = default;
  Polynomial(std::initializer_list<Coeff> ascending) : coeffs_(ascending) { trim(); }
  explicit Polynomial(std::vector<Coeff> ascending) : coeffs_(std::move(ascending)) { trim(); }

  static Polynomial constant(Coeff c) { return Polynomial(std::vector<Coeff>{std::move(c)}); }
  static Polynomial monomial(Coeff c, std::size_t degree) {
    std::vector<Coeff> v(degree + 1, Coeff(0));
    v[degree] = std::move(c);
    return Polynomial(std::move(v));
  }
  static Polynomial variable() { return monomial(Coeff(1), 1); }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  Coeff coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Coeff(0); }
  const Coeff& leading() const {
    if (coeffs_.empty()) throw InputError("leading coefficient of the zero polynomial");
    return coeffs_.back();
  }
  const std::vector<Coeff>& coefficients() const { return coeffs_; }

  Polynomial derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Coeff> d(coeffs_.size() - 1, Coeff(0));
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * Coeff(static_cast<int>(i));
    return Polynomial(std::move(d));
  }

  /// Horner evaluation; T must support T * T and T + Coeff-converted values.
  template <class T, class Convert>
  T evaluate(const T& x, Convert convert) const {
    if (coeffs_.empty()) return convert(Coeff(0));
    T acc = convert(coeffs_.back());
    for (std::size_t i = coeffs_.size() - 1; i-- > 0;) acc = acc * x + convert(coeffs_[i]);
    return acc;
  }
  Coeff operator()(const Coeff& x) const {
    return evaluate(x, [](const Coeff& c) { return c; });
  }

  /// Applies f to every coefficient (e.g. Rational -> Complex).
  template <class F>
  auto map(F f) const -> Polynomial<decltype(f(std::declval<Coeff>()))> {
    using Out = decltype(f(std::declval<Coeff>()));
    std::vector<Out> out;
    out.reserve(coeffs_.size());
    for (const Coeff& c : coeffs_) out.push_back(f(c));
    return Polynomial<Out>(std::move(out));
  }

  /// p(x + shift), by repeated synthetic division.
  Polynomial taylor_shift(const Coeff& shift) const {
    std::vector<Coeff> c = coeffs_;
    const std::size_t n = c.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = n - 1; j > i; --j) c[j - 1] = c[j - 1] + shift * c[j];
    return Polynomial(std::move(c));
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Coeff(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] = coeffs_[i] + o.coeffs_[i];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Coeff(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] = coeffs_[i] - o.coeffs_[i];
    trim();
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(const Polynomial& a) {
    std::vector<Coeff> c(a.coeffs_.size(), Coeff(0));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = Coeff(0) - a.coeffs_[i];
    return Polynomial(std::move(c));
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Coeff> c(a.coeffs_.size() + b.coeffs_.size() - 1, Coeff(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] = c[i + j] + a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(c));
  }
  friend Polynomial operator*(const Coeff& s, const Polynomial& a) {
    std::vector<Coeff> c(a.coeffs_.size(), Coeff(0));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = s * a.coeffs_[i];
    return Polynomial(std::move(c));
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == Coeff(0)) coeffs_.pop_back();
  }

  std::vector<Coeff> coeffs_;
};

template <class Coeff>
Polynomial<Coeff> pow(const Polynomial<Coeff>& p, unsigned e) {
  Polynomial<Coeff> r = Polynomial<Coeff>::constant(Coeff(1));
  for (unsigned i = 0; i < e; ++i) r = r * p;
  return r;
}

// ---------------------------------------------------------------------------
// Field algorithms.

template <class Coeff>
struct DivisionResult {
  Polynomial<Coeff> quotient, remainder;
};

template <class Coeff>
DivisionResult<Coeff> divide(const Polynomial<Coeff>& a, const Polynomial<Coeff>& b) {
  if (b.is_zero()) throw InputError("polynomial division by zero");
  std::vector<Coeff> r = a.coefficients();
  const int db = b.degree();
  if (a.degree() < db) return {{}, a};
  std::vector<Coeff> q(static_cast<std::size_t>(a.degree() - db + 1), Coeff(0));
  const Coeff& lb = b.leading();
  for (int k = a.degree() - db; k >= 0; --k) {
    const Coeff factor = r[static_cast<std::size_t>(k + db)] / lb;
    q[static_cast<std::size_t>(k)] = factor;
    for (int j = 0; j <= db; ++j) {
      auto& slot = r[static_cast<std::size_t>(k + j)];
      slot = slot - factor * b.coefficient(static_cast<std::size_t>(j));
    }
  }
  r.resize(static_cast<std::size_t>(db));
  return {Polynomial<Coeff>(std::move(q)), Polynomial<Coeff>(std::move(r))};
}

template <class Coeff>
Polynomial<Coeff> monic(const Polynomial<Coeff>& p) {
  if (p.is_zero()) return p;
  return (Coeff(1) / p.leading()) * p;
}

/// Monic greatest common divisor. Throws InputError when both inputs are zero.
template <class Coeff>
Polynomial<Coeff> gcd(Polynomial<Coeff> a, Polynomial<Coeff> b) {
  if (a.is_zero() && b.is_zero()) throw InputError("gcd of two zero polynomials");
  while (!b.is_zero()) {
    Polynomial<Coeff> r = divide(a, b).remainder;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

/// p / gcd(p, p'): same roots as p, each simple.
template <class Coeff>
Polynomial<Coeff> square_free_part(const Polynomial<Coeff>& p) {
  if (p.is_zero()) throw InputError("square-free part of the zero polynomial");
  if (p.degree() == 0) return Polynomial<Coeff>::constant(Coeff(1));
  return divide(p, gcd(p, p.derivative())).quotient;
}

/// Yun's algorithm: p = c * prod_k f_k^k with f_k square-free and pairwise
/// coprime. Returns the nonconstant (f_k, k) pairs, k increasing.
template <class Coeff>
std::vector<std::pair<Polynomial<Coeff>, int>> square_free_decomposition(const Polynomial<Coeff>& p) {
  if (p.is_zero()) throw InputError("square-free decomposition of the zero polynomial");
  std::vector<std::pair<Polynomial<Coeff>, int>> out;
  if (p.degree() == 0) return out;
  const Polynomial<Coeff> dp = p.derivative();
  Polynomial<Coeff> a = gcd(p, dp);
  Polynomial<Coeff> b = divide(p, a).quotient;
  Polynomial<Coeff> c = divide(dp, a).quotient;
  Polynomial<Coeff> d = c - b.derivative();
  for (int k = 1; b.degree() > 0; ++k) {
    a = gcd(b, d);
    if (a.degree() > 0) out.emplace_back(monic(a), k);
    b = divide(b, a).quotient;
    c = divide(d, a).quotient;
    d = c - b.derivative();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Division-free determinant and resultant.

/// Berkowitz: coefficients of det(x I - A), descending (result[0] == 1).
/// Works over any commutative ring.
template <class Coeff>
std::vector<Coeff> berkowitz(const std::vector<std::vector<Coeff>>& a) {
  const std::size_t n = a.size();
  std::vector<Coeff> poly{Coeff(1)};
  for (std::size_t r = 0; r < n; ++r) {
    // Leading (r+1)x(r+1) block: S = a[0..r)[0..r), row R = a[r][0..r), col C = a[0..r)[r].
    std::vector<Coeff> t;
    t.reserve(r + 2);
    t.push_back(Coeff(1));
    t.push_back(Coeff(0) - a[r][r]);
    std::vector<Coeff> col(r, Coeff(0));
    for (std::size_t i = 0; i < r; ++i) col[i] = a[i][r];
    for (std::size_t k = 0; k < r; ++k) {
      Coeff dot(0);
      for (std::size_t i = 0; i < r; ++i) dot = dot + a[r][i] * col[i];
      t.push_back(Coeff(0) - dot);
      std::vector<Coeff> next(r, Coeff(0));
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) next[i] = next[i] + a[i][j] * col[j];
      col = std::move(next);
    }
    std::vector<Coeff> updated(r + 2, Coeff(0));
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, r); ++j) updated[i] = updated[i] + t[i - j] * poly[j];
    poly = std::move(updated);
  }
  return poly;
}

template <class Coeff>
Coeff determinant(const std::vector<std::vector<Coeff>>& a) {
  const std::vector<Coeff> cp = berkowitz(a);
  const Coeff last = cp.back();
  return (a.size() % 2 == 0) ? last : Coeff(0) - last;
}

/// det(x I - A) as an ascending polynomial.
template <class Coeff>
Polynomial<Coeff> characteristic_polynomial(const std::vector<std::vector<Coeff>>& a) {
  std::vector<Coeff> cp = berkowitz(a);
  std::reverse(cp.begin(), cp.end());
  return Polynomial<Coeff>(std::move(cp));
}

/// Sylvester matrix of p (degree m) and q (degree n): (m+n) x (m+n).
template <class Coeff>
std::vector<std::vector<Coeff>> sylvester_matrix(const Polynomial<Coeff>& p, const Polynomial<Coeff>& q) {
  const int m = p.degree(), n = q.degree();
  const std::size_t size = static_cast<std::size_t>(m + n);
  std::vector<std::vector<Coeff>> s(size, std::vector<Coeff>(size, Coeff(0)));
  for (int row = 0; row < n; ++row)
    for (int k = 0; k <= m; ++k) s[row][row + k] = p.coefficient(static_cast<std::size_t>(m - k));
  for (int row = 0; row < m; ++row)
    for (int k = 0; k <= n; ++k) s[n + row][row + k] = q.coefficient(static_cast<std::size_t>(n - k));
  return s;
}

/// Sylvester-determinant resultant. Zero if either input is zero.
template <class Coeff>
Coeff resultant(const Polynomial<Coeff>& p, const Polynomial<Coeff>& q) {
  if (p.is_zero() && q.is_zero()) throw InputError("resultant of two zero polynomials");
  if (p.is_zero() || q.is_zero()) return Coeff(0);
  return determinant(sylvester_matrix(p, q));
}

}  // namespace nbint
