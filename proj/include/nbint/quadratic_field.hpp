#pragma once

// Arithmetic in Q(sqrt(d)) for a fixed square-free integer d. Used to assemble
// W exactly for configurations whose coordinates and distances lie in a real
// quadratic field (equilateral and square/hexagonal layouts).

#include "nbint/rational.hpp"

#include <string>

namespace nbint {

class QuadraticNumber {
 public:
  QuadraticNumber() = default;
  QuadraticNumber(int a) : a_(a) {}                  // NOLINT
  QuadraticNumber(const Rational& a) : a_(a) {}      // NOLINT
  QuadraticNumber(Rational a, Rational b, Integer d);

  /// sqrt(d) itself.
  static QuadraticNumber root(const Integer& d) { return {0, 1, d}; }

  const Rational& rational_part() const { return a_; }
  const Rational& radical_part() const { return b_; }
  const Integer& radicand() const { return d_; }
  bool is_rational() const { return b_ == 0; }

  QuadraticNumber conjugate() const { return {a_, -b_, d_}; }
  /// a^2 - d b^2
  Rational norm() const { return a_ * a_ - Rational(d_) * b_ * b_; }
  int sign() const;
  Real to_real() const;

  friend QuadraticNumber operator+(const QuadraticNumber& x, const QuadraticNumber& y);
  friend QuadraticNumber operator-(const QuadraticNumber& x, const QuadraticNumber& y);
  friend QuadraticNumber operator-(const QuadraticNumber& x) { return {-x.a_, -x.b_, x.d_}; }
  friend QuadraticNumber operator*(const QuadraticNumber& x, const QuadraticNumber& y);
  friend QuadraticNumber operator/(const QuadraticNumber& x, const QuadraticNumber& y);
  friend bool operator==(const QuadraticNumber& x, const QuadraticNumber& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const QuadraticNumber& x, const QuadraticNumber& y) { return !(x == y); }

  std::string to_string() const;

 private:
  static Integer merge(const QuadraticNumber& x, const QuadraticNumber& y);

  Rational a_ = 0, b_ = 0;
  Integer d_ = 0;  // 0 while the radical part is zero and no field is fixed
};

}  // namespace nbint
