#pragma once

// Sparse polynomials with rational coefficients in three named variables
// (by default the masses m1, m2, m3).

#include "nbint/rational.hpp"

#include <array>
#include <complex>
#include <map>
#include <string>
#include <vector>

namespace nbint {

class MPoly {
 public:
  using Exponent = std::array<int, 3>;
  using Names = std::array<std::string, 3>;

  MPoly() = default;
  MPoly(int c) : MPoly(Rational(c)) {}  // NOLINT: implicit on purpose, ring constants
  MPoly(const Rational& c);             // NOLINT

  /// The i-th variable (0, 1, 2).
  static MPoly variable(int i);
  /// A polynomial over a different variable triple; mixing it with the default
  /// triple in arithmetic throws InputError.
  static MPoly with_names(const MPoly& p, Names names);

  const std::map<Exponent, Rational>& terms() const { return terms_; }
  const Names& names() const { return names_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;

  Rational evaluate(const std::array<Rational, 3>& at) const;
  template <class C>
  C evaluate_as(const std::array<C, 3>& at, C (*convert)(const Rational&)) const;

  /// Replaces variable i by the polynomial r.
  MPoly substitute(int i, const MPoly& r) const;

  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend bool operator==(const MPoly& a, const MPoly& b);
  friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

  std::string to_string() const;

 private:
  void check_names(const MPoly& o) const;
  void add_term(const Exponent& e, const Rational& c);

  std::map<Exponent, Rational> terms_;
  Names names_{"m1", "m2", "m3"};
};

/// True when a = factor * b for some nonzero rational factor (returned).
bool proportional(const MPoly& a, const MPoly& b, Rational& factor);

template <class C>
C MPoly::evaluate_as(const std::array<C, 3>& at, C (*convert)(const Rational&)) const {
  C acc = convert(Rational(0));
  for (const auto& [e, c] : terms_) {
    C t = convert(c);
    for (int v = 0; v < 3; ++v)
      for (int k = 0; k < e[v]; ++k) t = t * at[v];
    acc = acc + t;
  }
  return acc;
}

}  // namespace nbint
