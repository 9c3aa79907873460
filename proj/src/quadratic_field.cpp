#include "nbint/quadratic_field.hpp"

#include "nbint/errors.hpp"

namespace nbint {

QuadraticNumber::QuadraticNumber(Rational a, Rational b, Integer d)
    : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {}

Integer QuadraticNumber::merge(const QuadraticNumber& x, const QuadraticNumber& y) {
  if (x.d_ == 0) return y.d_;
  if (y.d_ == 0 || x.d_ == y.d_) return x.d_;
  if (x.b_ == 0) return y.d_;
  if (y.b_ == 0) return x.d_;
  throw InputError("mixing different quadratic fields");
}

QuadraticNumber operator+(const QuadraticNumber& x, const QuadraticNumber& y) {
  return {x.a_ + y.a_, x.b_ + y.b_, QuadraticNumber::merge(x, y)};
}

QuadraticNumber operator-(const QuadraticNumber& x, const QuadraticNumber& y) {
  return {x.a_ - y.a_, x.b_ - y.b_, QuadraticNumber::merge(x, y)};
}

QuadraticNumber operator*(const QuadraticNumber& x, const QuadraticNumber& y) {
  const Integer d = QuadraticNumber::merge(x, y);
  return {x.a_ * y.a_ + Rational(d) * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, d};
}

QuadraticNumber operator/(const QuadraticNumber& x, const QuadraticNumber& y) {
  const Rational n = y.norm();
  if (n == 0) throw InputError("division by zero in a quadratic field");
  QuadraticNumber inv(y.a_ / n, -y.b_ / n, y.d_);
  return x * inv;
}

int QuadraticNumber::sign() const {
  // sign(a + b sqrt(d)), d > 0.
  const int sa = a_ > 0 ? 1 : (a_ < 0 ? -1 : 0);
  const int sb = b_ > 0 ? 1 : (b_ < 0 ? -1 : 0);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sa == 0 ? sb : sa;
  // Opposite signs: compare a^2 with d b^2.
  const Rational diff = a_ * a_ - Rational(d_) * b_ * b_;
  return diff > 0 ? sa : (diff < 0 ? sb : 0);
}

Real QuadraticNumber::to_real() const {
  Real r = nbint::to_real(a_);
  if (b_ != 0) r += nbint::to_real(b_) * sqrt(nbint::to_real(Rational(d_)));
  return r;
}

std::string QuadraticNumber::to_string() const {
  if (b_ == 0) return nbint::to_string(a_);
  std::string s = a_ == 0 ? "" : nbint::to_string(a_) + (b_ > 0 ? "+" : "");
  return s + nbint::to_string(b_) + "*sqrt(" + d_.str() + ")";
}

}  // namespace nbint
