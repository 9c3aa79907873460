#include "nbint/multivariate.hpp"

#include "nbint/errors.hpp"

#include <sstream>

namespace nbint {

MPoly::MPoly(const Rational& c) {
  if (c != 0) terms_[{0, 0, 0}] = c;
}

MPoly MPoly::variable(int i) {
  if (i < 0 || i > 2) throw InputError("variable index out of range");
  MPoly p;
  Exponent e{0, 0, 0};
  e[i] = 1;
  p.terms_[e] = 1;
  return p;
}

MPoly MPoly::with_names(const MPoly& p, Names names) {
  MPoly q = p;
  q.names_ = std::move(names);
  return q;
}

int MPoly::total_degree() const {
  int d = -1;
  for (const auto& kv : terms_) d = std::max(d, kv.first[0] + kv.first[1] + kv.first[2]);
  return d;
}

Rational MPoly::evaluate(const std::array<Rational, 3>& at) const {
  Rational acc = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (int v = 0; v < 3; ++v)
      for (int k = 0; k < e[v]; ++k) t *= at[v];
    acc += t;
  }
  return acc;
}

MPoly MPoly::substitute(int i, const MPoly& r) const {
  check_names(r);
  MPoly out = MPoly::with_names(MPoly(), names_);
  for (const auto& [e, c] : terms_) {
    Exponent rest = e;
    rest[i] = 0;
    MPoly t = MPoly::with_names(MPoly(), names_);
    t.terms_[rest] = c;
    for (int k = 0; k < e[i]; ++k) t = t * r;
    out += t;
  }
  return out;
}

void MPoly::check_names(const MPoly& o) const {
  // Zero and constants carry no variables and combine with anything.
  auto constant = [](const MPoly& p) {
    return p.terms_.empty() || (p.terms_.size() == 1 && p.terms_.begin()->first == Exponent{0, 0, 0});
  };
  if (names_ != o.names_ && !constant(*this) && !constant(o))
    throw InputError("polynomials over different variable sets");
}

void MPoly::add_term(const Exponent& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MPoly& MPoly::operator+=(const MPoly& o) {
  check_names(o);
  if (terms_.empty()) names_ = o.names_;
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  check_names(o);
  if (terms_.empty()) names_ = o.names_;
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  a.check_names(b);
  MPoly out;
  out.names_ = a.terms_.size() > 1 || a.total_degree() > 0 ? a.names_ : b.names_;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_)
      out.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
  return out;
}

bool operator==(const MPoly& a, const MPoly& b) {
  if (a.terms_ != b.terms_) return false;
  return a.terms_.empty() || a.total_degree() == 0 || a.names_ == b.names_;
}

std::string MPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = c < 0 ? Rational(-c) : c;
    if (!first) out << (c < 0 ? " - " : " + ");
    else if (c < 0) out << "-";
    first = false;
    const bool unit = e != Exponent{0, 0, 0} && mag == 1;
    if (!unit) out << nbint::to_string(mag);
    bool need_star = !unit;
    for (int v = 0; v < 3; ++v) {
      if (e[v] == 0) continue;
      if (need_star) out << "*";
      out << names_[v];
      if (e[v] > 1) out << "^" << e[v];
      need_star = true;
    }
  }
  return out.str();
}

bool proportional(const MPoly& a, const MPoly& b, Rational& factor) {
  if (a.is_zero() || b.is_zero()) return false;
  if (a.terms().size() != b.terms().size()) return false;
  const auto& [e0, c0] = *b.terms().begin();
  auto it = a.terms().find(e0);
  if (it == a.terms().end()) return false;
  factor = it->second / c0;
  for (const auto& [e, c] : b.terms()) {
    auto jt = a.terms().find(e);
    if (jt == a.terms().end() || jt->second != factor * c) return false;
  }
  return true;
}

}  // namespace nbint
