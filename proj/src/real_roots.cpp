#include "nbint/real_roots.hpp"

#include <sstream>

namespace nbint {

namespace {

int sign(const Rational& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

int sign_changes(const std::vector<QPoly>& chain, const Rational& x) {
  int changes = 0, last = 0;
  for (const QPoly& q : chain) {
    const int s = sign(evaluate(q, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

// Strict bound on the modulus of every root (Cauchy).
Rational root_bound(const QPoly& p) {
  Rational m = 0;
  const Rational lead = abs(p.leading());
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, Rational(abs(p.coefficient(i)) / lead));
  return m + 1;
}

// A point strictly inside (lo, hi), near the middle, where p does not vanish.
Rational split_point(const QPoly& p, const Rational& lo, const Rational& hi) {
  Rational mid = (lo + hi) / 2;
  Rational step = (hi - lo) / 8;
  for (int k = 0; evaluate(p, mid) == 0; ++k) {
    mid = (lo + hi) / 2 + step;
    step /= 2;
  }
  return mid;
}

}  // namespace

Rational evaluate(const QPoly& p, const Rational& x) {
  Rational acc = 0;
  const auto& c = p.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<QPoly> sturm_sequence(const QPoly& p) {
  if (p.is_zero()) throw InputError("Sturm sequence of the zero polynomial");
  std::vector<QPoly> chain{p, p.derivative()};
  while (!chain.back().is_zero()) {
    QPoly r = divide(chain[chain.size() - 2], chain.back()).remainder;
    chain.push_back(-r);
  }
  chain.pop_back();
  return chain;
}

int count_real_roots(const std::vector<QPoly>& sturm, const Rational& a, const Rational& b) {
  return sign_changes(sturm, a) - sign_changes(sturm, b);
}

int count_real_roots(const QPoly& p, const Rational& a, const Rational& b) {
  return count_real_roots(sturm_sequence(square_free_part(p)), a, b);
}

std::vector<RootInterval> real_root_isolation(const QPoly& p) {
  if (p.is_zero()) throw InputError("root isolation of the zero polynomial");
  const QPoly s = square_free_part(p);
  std::vector<RootInterval> out;
  if (s.degree() < 1) return out;
  const auto chain = sturm_sequence(s);
  const Rational bound = root_bound(s);
  std::vector<RootInterval> todo{{-bound, bound}};
  while (!todo.empty()) {
    RootInterval iv = todo.back();
    todo.pop_back();
    const int n = count_real_roots(chain, iv.lo, iv.hi);
    if (n == 0) continue;
    if (n == 1) {
      out.push_back(iv);
      continue;
    }
    const Rational mid = split_point(s, iv.lo, iv.hi);
    todo.push_back({mid, iv.hi});
    todo.push_back({iv.lo, mid});
  }
  std::sort(out.begin(), out.end(), [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
  return out;
}

RootInterval refine_root(const QPoly& p, RootInterval iv, const Rational& width) {
  const QPoly s = square_free_part(p);
  int slo = sign(evaluate(s, iv.lo));
  while (iv.hi - iv.lo > width) {
    const Rational mid = split_point(s, iv.lo, iv.hi);
    if (sign(evaluate(s, mid)) == slo) iv.lo = mid;
    else iv.hi = mid;
  }
  return iv;
}

std::optional<Rational> rational_root_in(const QPoly& p, const RootInterval& iv) {
  const QPoly s = square_free_part(p);
  // A rational root a/b of an integer-coefficient polynomial has b dividing the
  // leading coefficient, so refining below 1/(2 b^2) pins the candidate.
  Integer lcm = 1;
  for (const Rational& c : s.coefficients()) lcm = boost::multiprecision::lcm(lcm, denominator_of(c));
  const Integer lead = abs(numerator_of(s.leading() * Rational(lcm)));
  const Rational width = Rational(1) / Rational(2 * lead * lead + 1);
  const RootInterval tight = refine_root(s, iv, width);
  const Rational guess = simplest_between(tight.lo, tight.hi);
  if (evaluate(s, guess) == 0) return guess;
  return std::nullopt;
}

std::string serialize(const QPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  for (std::size_t i = 0; i < p.coefficients().size(); ++i) {
    if (i) out << ' ';
    out << to_string(p.coefficients()[i]);
  }
  return out.str();
}

QPoly parse_polynomial(const std::string& text) {
  std::istringstream in(text);
  std::vector<Rational> c;
  std::string tok;
  while (in >> tok) c.push_back(parse_rational(tok));
  if (c.empty()) throw InputError("empty polynomial text");
  return QPoly(std::move(c));
}

}  // namespace nbint
