#include "nbint/rational.hpp"

#include "nbint/errors.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cctype>
#include <sstream>

namespace nbint {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// Decimal digits to an integer; leading zeros would otherwise select octal.
Integer decimal_integer(std::string_view digits) {
  while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
  return Integer{std::string(digits)};
}

Integer parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw InputError("malformed integer '" + std::string(s) + "'");
  const Integer v = decimal_integer(s);
  return negative ? Integer(-v) : v;
}

Integer pow10(long e) {
  Integer r = 1;
  for (long i = 0; i < e; ++i) r *= 10;
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw InputError("empty rational literal");

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const Integer p = parse_integer(text.substr(0, slash));
    const Integer q = parse_integer(text.substr(slash + 1));
    if (q == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    return Rational(p, q);
  }

  std::string_view mantissa = text;
  long exponent = 0;
  if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    const Integer ex = parse_integer(text.substr(e + 1));
    if (ex > 4000 || ex < -4000) throw InputError("exponent out of range in '" + std::string(text) + "'");
    exponent = ex.convert_to<long>();
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa[0] == '-' || mantissa[0] == '+')) {
    negative = mantissa[0] == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  long fraction_digits = 0;
  if (const auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    const std::string_view ip = mantissa.substr(0, dot), fp = mantissa.substr(dot + 1);
    if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
      throw InputError("malformed decimal '" + std::string(text) + "'");
    digits = std::string(ip) + std::string(fp);
    fraction_digits = static_cast<long>(fp.size());
  } else {
    if (!all_digits(mantissa)) throw InputError("malformed number '" + std::string(text) + "'");
    digits = std::string(mantissa);
  }
  Integer value = decimal_integer(digits);
  if (negative) value = -value;
  const long shift = exponent - fraction_digits;
  if (shift >= 0) return Rational(Integer(value * pow10(shift)));
  return Rational(value, pow10(-shift));
}

std::string to_string(const Rational& q) {
  const Integer d = denominator_of(q);
  if (d == 1) return numerator_of(q).str();
  return numerator_of(q).str() + "/" + d.str();
}

Integer numerator_of(const Rational& q) { return Integer(boost::multiprecision::numerator(q)); }
Integer denominator_of(const Rational& q) { return Integer(boost::multiprecision::denominator(q)); }

Real to_real(const Rational& q) {
  using Wide = boost::multiprecision::cpp_bin_float_50;
  const Wide v = Wide(numerator_of(q).str()) / Wide(denominator_of(q).str());
  return Real(v.str(45, std::ios_base::scientific));
}

bool exact_sqrt(const Rational& q, Rational& root) {
  if (q < 0) return false;
  const Integer p = numerator_of(q), d = denominator_of(q);
  const Integer sp = boost::multiprecision::sqrt(p), sd = boost::multiprecision::sqrt(d);
  if (sp * sp != p || sd * sd != d) return false;
  root = Rational(sp, sd);
  return true;
}

Rational simplest_between(const Rational& lo_in, const Rational& hi_in) {
  Rational lo = lo_in, hi = hi_in;
  if (hi < lo) std::swap(lo, hi);
  if (lo <= 0 && hi >= 0) return Rational(0);
  if (hi < 0) return -simplest_between(-hi, -lo);
  // Continued-fraction descent on positive intervals.
  const Integer fl = numerator_of(lo) / denominator_of(lo);
  if (Rational(fl) == lo) return lo;
  if (Rational(fl + 1) <= hi) return Rational(fl + 1);
  const Rational inner = simplest_between(Rational(1) / (hi - Rational(fl)), Rational(1) / (lo - Rational(fl)));
  return Rational(fl) + Rational(1) / inner;
}

std::string format_real(const Real& x, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

}  // namespace nbint
