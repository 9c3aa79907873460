#pragma once

#include "nbint/polynomial.hpp"
#include "nbint/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nbint {

using QPoly = Polynomial<Rational>;

/// Open interval (lo, hi) with p(lo), p(hi) nonzero and of opposite signs.
struct RootInterval {
  Rational lo, hi;
};

/// Sturm chain p, p', -rem(p_{k-1}, p_k), ...
std::vector<QPoly> sturm_sequence(const QPoly& p);

/// Number of distinct real roots in (a, b]; a < b.
int count_real_roots(const std::vector<QPoly>& sturm, const Rational& a, const Rational& b);
int count_real_roots(const QPoly& p, const Rational& a, const Rational& b);

/// One interval per distinct real root of p, sorted increasingly and pairwise
/// disjoint. The square-free part is taken first. Throws InputError for p = 0.
std::vector<RootInterval> real_root_isolation(const QPoly& p);

/// Bisects an isolating interval of p until hi - lo <= width.
RootInterval refine_root(const QPoly& p, RootInterval iv, const Rational& width);

/// The root in the interval if it is rational (found by searching the
/// simplest fraction in a refined interval and checking p exactly).
std::optional<Rational> rational_root_in(const QPoly& p, const RootInterval& iv);

/// Evaluates exactly.
Rational evaluate(const QPoly& p, const Rational& x);

/// Plain-text "c0 c1 ... cd" with rationals as p/q.
std::string serialize(const QPoly& p);
QPoly parse_polynomial(const std::string& text);

}  // namespace nbint
