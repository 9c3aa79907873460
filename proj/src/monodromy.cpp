#include "nbint/monodromy.hpp"

#include "nbint/errors.hpp"

#include <algorithm>
#include <cmath>
#include <future>

namespace nbint {

// ---------------------------------------------------------------------------
// 2x2 algebra

Matrix2 identity2() { return {{{Complex(1), Complex(0)}, {Complex(0), Complex(1)}}}; }

Matrix2 operator*(const Matrix2& a, const Matrix2& b) {
  Matrix2 c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return c;
}

Complex determinant(const Matrix2& a) { return a[0][0] * a[1][1] - a[0][1] * a[1][0]; }

Matrix2 inverse(const Matrix2& a) {
  const Complex d = determinant(a);
  if (d == Complex(0)) throw Error("singular transport matrix");
  return {{{a[1][1] / d, -a[0][1] / d}, {-a[1][0] / d, a[0][0] / d}}};
}

Real norm2(const Matrix2& a) {
  // sigma_max^2 = (f + sqrt(f^2 - 4 |det|^2)) / 2 with f the squared Frobenius norm.
  Real f = 0;
  for (const auto& row : a)
    for (const Complex& x : row) f += norm(x);
  const Real d = abs(determinant(a));
  const Real disc = std::max(Real(0), f * f - 4 * d * d);
  return sqrt((f + sqrt(disc)) / 2);
}

Real deviation_from_identity(const Matrix2& a) {
  Matrix2 b = a;
  b[0][0] -= Real(1);
  b[1][1] -= Real(1);
  return norm2(b);
}

std::pair<Complex, Complex> eigenvalues(const Matrix2& a) {
  const Complex tr = a[0][0] + a[1][1];
  const Complex disc = std::sqrt(tr * tr - Real(4) * determinant(a));
  return {(tr + disc) / Real(2), (tr - disc) / Real(2)};
}

Matrix2 commutator(const Matrix2& a, const Matrix2& b) { return a * b * inverse(a) * inverse(b); }

// ---------------------------------------------------------------------------
// Paths

namespace {

Real distance_to_segment(const Complex& p, const Complex& a, const Complex& b) {
  const Complex ab = b - a;
  const Real len2 = norm(ab);
  if (len2 == 0) return abs(p - a);
  Real s = ((p - a) * std::conj(ab)).real() / len2;
  s = std::clamp(s, Real(0), Real(1));
  return abs(p - (a + s * ab));
}

Real nearest(const std::vector<Complex>& points, const Complex& z) {
  Real d = std::numeric_limits<Real>::infinity();
  for (const Complex& s : points) d = std::min(d, Real(abs(z - s)));
  return d;
}

}  // namespace

Real path_clearance(const VariationalEquation& eq, const std::vector<Complex>& waypoints) {
  const auto sing = finite_singular_points(eq);
  Real d = std::numeric_limits<Real>::infinity();
  for (std::size_t i = 0; i + 1 < waypoints.size(); ++i)
    for (const Complex& s : sing) d = std::min(d, distance_to_segment(s, waypoints[i], waypoints[i + 1]));
  if (waypoints.size() == 1) d = nearest(sing, waypoints[0]);
  return d;
}

LoopPath custom_loop(const VariationalEquation& eq, const Complex& base_point, std::vector<Complex> waypoints,
                     const Real& min_clearance) {
  if (waypoints.empty() || waypoints.front() != base_point) waypoints.insert(waypoints.begin(), base_point);
  if (waypoints.back() != base_point) waypoints.push_back(base_point);
  LoopPath path;
  path.base_point = base_point;
  path.waypoints = std::move(waypoints);
  path.clearance = path_clearance(eq, path.waypoints);
  path.label = "custom";
  if (!(path.clearance > min_clearance)) throw InputError("path passes through a singular point");
  return path;
}

Complex default_base_point(const VariationalEquation& eq) {
  std::vector<Real> xs{Real(0), Real(1)};
  for (const Complex& s : finite_singular_points(eq))
    if (abs(s.imag()) < Real(1e-12) && s.real() > 0 && s.real() < 1) xs.push_back(s.real());
  std::sort(xs.begin(), xs.end());
  Real best = Real(0.5), width = -1;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i)
    if (xs[i + 1] - xs[i] > width) {
      width = xs[i + 1] - xs[i];
      best = (xs[i] + xs[i + 1]) / 2;
    }
  return Complex(best);
}

LoopPath loop_around(const VariationalEquation& eq, const Complex& base_point, const Complex& s, int polygon) {
  if (polygon < 8) throw InputError("polygon needs at least 8 sides");
  const auto sing = finite_singular_points(eq);
  Real d_other = std::numeric_limits<Real>::infinity(), top = 0;
  for (const Complex& o : sing) {
    top = std::max(top, Real(o.imag()));
    if (abs(o - s) > Real(1e-15)) d_other = std::min(d_other, Real(abs(o - s)));
  }
  if (!std::isfinite(static_cast<double>(d_other))) d_other = 1;
  const Real r = std::min(d_other, Real(abs(s - base_point))) / 2;
  if (!(r > 0)) throw InputError("base point coincides with a singular point");
  const Real height = std::max({Real(1), top + 1, s.imag() + r + Real(0.5)});

  LoopPath path;
  path.base_point = base_point;
  path.encircled = s;
  const Complex up(base_point.real(), height), over(s.real(), height);
  path.waypoints = {base_point, up, over, s + Complex(0, r)};
  for (int k = 1; k <= polygon; ++k) {
    const Real th = pi() / 2 + 2 * pi() * k / polygon;
    path.waypoints.push_back(s + r * Complex(cos(th), sin(th)));
  }
  path.waypoints.back() = s + Complex(0, r);
  path.waypoints.insert(path.waypoints.end(), {over, up, base_point});
  path.clearance = path_clearance(eq, path.waypoints);
  return path;
}

LoopPath loop_around_infinity(const VariationalEquation& eq, const Complex& base_point, int polygon) {
  if (polygon < 8) throw InputError("polygon needs at least 8 sides");
  Real big = abs(base_point);
  for (const Complex& s : finite_singular_points(eq)) big = std::max(big, Real(abs(s)));
  const Real R = 2 * big + 2;
  const Real x0 = base_point.real();
  const Complex entry(x0, sqrt(R * R - x0 * x0));
  const Real th0 = atan2(entry.imag(), entry.real());
  LoopPath path;
  path.base_point = base_point;
  path.encircles_infinity = true;
  path.waypoints = {base_point, entry};
  for (int k = 1; k <= polygon; ++k) {
    const Real th = th0 - 2 * pi() * k / polygon;
    path.waypoints.push_back(R * Complex(cos(th), sin(th)));
  }
  path.waypoints.back() = entry;
  path.waypoints.push_back(base_point);
  path.clearance = path_clearance(eq, path.waypoints);
  path.label = "infinity";
  return path;
}

// ---------------------------------------------------------------------------
// Continuation

namespace {

class Stepper {
 public:
  Stepper(const VariationalEquation& eq, const ContinuationOptions& opt)
      : P_(eq.P()), Q_(eq.Q()), R_(eq.R()), sing_(finite_singular_points(eq)), opt_(opt) {}

  long steps = 0;

  // Advances Y (rows X, X'; columns basis solutions) from a to b.
  void segment(Matrix2& Y, const Complex& a, const Complex& b, const Real& ratio) {
    Complex z = a;
    while (z != b) {
      const Real d = nearest(sing_, z);
      if (!(d > opt_.min_clearance)) throw ClearanceError("path too close to a singular point");
      if (++steps > opt_.max_steps) throw ClearanceError("step budget exhausted near a singular point");
      const Complex rest = b - z;
      const Real len = ratio * d;
      const Complex h = abs(rest) <= len ? rest : rest * (len / abs(rest));
      step(Y, z, h);
      z = abs(rest) <= len ? b : z + h;
    }
  }

 private:
  void step(Matrix2& Y, const Complex& z, const Complex& h) {
    const auto pc = P_.taylor_shift(z).coefficients();
    const auto qc = Q_.taylor_shift(z).coefficients();
    auto p = [&](int k) { return k < static_cast<int>(pc.size()) ? pc[k] : Complex(0); };
    auto q = [&](int k) { return k < static_cast<int>(qc.size()) ? qc[k] : Complex(0); };
    const Complex p0 = p(0);
    for (int col = 0; col < 2; ++col) {
      std::vector<Complex> c{Y[0][col], Y[1][col]};
      Complex x = c[0] + c[1] * h, dx = c[1], hp = h;  // hp = h^(n-1)
      int quiet = 0;
      for (int m = 0; m < 2000; ++m) {
        Complex s = R_ * c[m];
        for (int k = 1; k <= 3 && k <= m + 2; ++k) {
          const int j = m - k + 2;
          if (j >= 2) s += p(k) * Real(j) * Real(j - 1) * c[j];
        }
        for (int k = 0; k <= 1 && k <= m + 1; ++k) {
          const int j = m - k + 1;
          if (j >= 1) s += q(k) * Real(j) * c[j];
        }
        const int n = m + 2;
        c.push_back(-s / (p0 * Real(n) * Real(n - 1)));
        const Complex term_d = Real(n) * c[n] * hp;
        hp *= h;
        const Complex term = c[n] * hp;
        x += term;
        dx += term_d;
        const Real scale = abs(x) + abs(dx) * abs(h);
        if (abs(term) + abs(term_d) * abs(h) <= opt_.tolerance * Real(1e-3) * scale) {
          if (++quiet >= 3) break;
        } else {
          quiet = 0;
        }
      }
      Y[0][col] = x;
      Y[1][col] = dx;
    }
  }

  Polynomial<Complex> P_, Q_;
  Complex R_;
  std::vector<Complex> sing_;
  ContinuationOptions opt_;
};

Matrix2 transport(const VariationalEquation& eq, const std::vector<Complex>& pts, const ContinuationOptions& opt,
                  const Real& ratio, long* steps) {
  Stepper st(eq, opt);
  Matrix2 Y = identity2();
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) st.segment(Y, pts[i], pts[i + 1], ratio);
  if (steps) *steps = st.steps;
  return Y;
}

Real relative_difference(const Matrix2& a, const Matrix2& b) {
  Matrix2 d;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) d[i][j] = a[i][j] - b[i][j];
  return norm2(d) / std::max(Real(1), norm2(a));
}

}  // namespace

Complex abel_factor(const VariationalEquation& eq, const std::vector<Complex>& waypoints) {
  // Cancel common roots of P and Q, then Q/P = sum res_r / (t - r) with simple poles.
  Polynomial<Complex> P = eq.P(), Q = eq.Q();
  const auto roots = finite_singular_points(eq);
  const Real eps(1e-25);
  for (const Complex& r : roots) {
    const Polynomial<Complex> lin({-r, Complex(1)});
    while (P.degree() > 0 && Q.degree() >= 0 && abs(P(r)) <= eps * (1 + abs(r)) && abs(Q(r)) <= eps * (1 + abs(r))) {
      P = divide(P, lin).quotient;
      Q = divide(Q, lin).quotient;
    }
  }
  Complex integral(0);
  if (Q.is_zero()) return Complex(1);
  const auto dP = P.derivative();
  Real scale = 1;
  for (const Complex& c : P.coefficients()) scale = std::max(scale, Real(abs(c)));
  for (const Complex& r : roots) {
    if (abs(P(r)) > eps * (1 + abs(r)) * scale) continue;
    if (abs(dP(r)) <= eps) throw Error("Abel factor needs simple poles");
    const Complex res = Q(r) / dP(r);
    for (std::size_t i = 0; i + 1 < waypoints.size(); ++i)
      if (waypoints[i] != waypoints[i + 1])
        integral += res * std::log((waypoints[i + 1] - r) / (waypoints[i] - r));
  }
  return std::exp(-integral);
}

FundamentalMatrix continue_solution(const VariationalEquation& eq, const LoopPath& path,
                                    const ContinuationOptions& options) {
  if (!(options.tolerance > 0)) throw InputError("tolerance must be positive");
  if (!(options.step_ratio > 0 && options.step_ratio < 1)) throw InputError("step ratio must lie in (0, 1)");
  if (path.waypoints.size() < 2) throw InputError("path needs at least two waypoints");
  if (!(path_clearance(eq, path.waypoints) > 0)) throw ClearanceError("path meets a singular point");
  FundamentalMatrix out;
  out.path = path;
  out.entries = transport(eq, path.waypoints, options, options.step_ratio, &out.steps);
  if (options.estimate_error)
    out.estimated_error =
        relative_difference(out.entries, transport(eq, path.waypoints, options, options.step_ratio / 2, nullptr));
  const Complex expected = abel_factor(eq, path.waypoints);
  out.wronskian_deviation = abs(determinant(out.entries) - expected) / std::max(Real(1), Real(abs(expected)));
  return out;
}

// ---------------------------------------------------------------------------
// Generators

namespace {

LocalCheck local_check(const VariationalEquation& eq, const FundamentalMatrix& m) {
  LocalCheck lc;
  lc.at_infinity = m.path.encircles_infinity;
  lc.location = m.path.encircled.value_or(Complex(0));
  lc.label = m.path.label;
  lc.exponents = indicial_exponents(eq, {lc.location, lc.at_infinity, lc.label});
  const Complex two_pi_i = Real(2) * pi() * imag_unit();
  const Complex e1 = std::exp(two_pi_i * lc.exponents.first), e2 = std::exp(two_pi_i * lc.exponents.second);
  const auto [v1, v2] = eigenvalues(m.entries);
  lc.exponent_match = std::min(std::max(abs(v1 - e1), abs(v2 - e2)), std::max(abs(v1 - e2), abs(v2 - e1)));
  const Complex diff = lc.exponents.first - lc.exponents.second;
  if (abs(diff.imag()) < Real(1e-9) && abs(diff.real() - round(diff.real())) < Real(1e-9)) {
    Matrix2 shifted = m.entries;
    shifted[0][0] -= e1;
    shifted[1][1] -= e1;
    lc.log_detected = norm2(shifted) > Real(1e-6) * std::max(Real(1), norm2(m.entries));
  }
  return lc;
}

}  // namespace

MonodromyReport monodromy_generators(const VariationalEquation& eq, std::optional<Complex> base_point,
                                     const ContinuationOptions& options) {
  MonodromyReport rep;
  rep.base_point = base_point.value_or(default_base_point(eq));
  rep.tolerance = options.tolerance;
  if (!(nearest(finite_singular_points(eq), rep.base_point) > options.min_clearance))
    throw InputError("base point must be an ordinary point");

  auto sing = finite_singular_points(eq);
  std::sort(sing.begin(), sing.end(), [](const Complex& a, const Complex& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  std::vector<std::future<FundamentalMatrix>> jobs;
  for (const Complex& s : sing) {
    LoopPath path = loop_around(eq, rep.base_point, s);
    path.label = "t=" + format_real(s.real(), 12) +
                 (abs(s.imag()) > Real(1e-20) ? (s.imag() < 0 ? "-" : "+") + format_real(abs(s.imag()), 12) + "i" : "");
    jobs.push_back(std::async(std::launch::async, [&eq, path, options] { return continue_solution(eq, path, options); }));
  }
  auto inf_job = std::async(std::launch::async, [&] {
    return continue_solution(eq, loop_around_infinity(eq, rep.base_point), options);
  });
  for (auto& j : jobs) rep.generators.push_back(j.get());
  rep.infinity = inf_job.get();

  Matrix2 prod = identity2();
  for (const auto& g : rep.generators) prod = g.entries * prod;
  rep.product_relation_deviation = deviation_from_identity(rep.infinity.entries * prod);

  std::vector<Matrix2> comms;
  for (std::size_t i = 0; i < rep.generators.size(); ++i)
    for (std::size_t j = i + 1; j < rep.generators.size(); ++j) {
      comms.push_back(commutator(rep.generators[i].entries, rep.generators[j].entries));
      rep.max_commutator_deviation = std::max(rep.max_commutator_deviation, deviation_from_identity(comms.back()));
    }
  // Generators of the derived subgroup: commutators and their conjugates by generators.
  std::vector<Matrix2> derived;
  for (const Matrix2& c : comms) {
    derived.push_back(c);
    for (const auto& g : rep.generators) {
      const Matrix2 gi = inverse(g.entries);
      derived.push_back(g.entries * c * gi);
      derived.push_back(gi * c * g.entries);
    }
  }
  for (std::size_t i = 0; i < derived.size(); ++i)
    for (std::size_t j = i + 1; j < derived.size(); ++j)
      rep.derived_commutator_deviation =
          std::max(rep.derived_commutator_deviation, deviation_from_identity(commutator(derived[i], derived[j])));

  for (const auto* m : {&rep.infinity}) {
    rep.max_estimated_error = std::max(rep.max_estimated_error, m->estimated_error);
    rep.max_wronskian_deviation = std::max(rep.max_wronskian_deviation, m->wronskian_deviation);
  }
  for (const auto& g : rep.generators) {
    rep.max_estimated_error = std::max(rep.max_estimated_error, g.estimated_error);
    rep.max_wronskian_deviation = std::max(rep.max_wronskian_deviation, g.wronskian_deviation);
    rep.local.push_back(local_check(eq, g));
  }
  rep.local.push_back(local_check(eq, rep.infinity));
  return rep;
}

std::string to_string(Certificate c) {
  switch (c) {
    case Certificate::Abelian:
      return "abelian";
    case Certificate::NonAbelian:
      return "non-abelian";
    case Certificate::Inconclusive:
      break;
  }
  return "inconclusive";
}

Certificate abelianity_certificate(const MonodromyReport& report, const Real& threshold) {
  if (!(threshold > 0)) throw InputError("threshold must be positive");
  if (report.max_estimated_error > threshold / 10 || report.max_wronskian_deviation > threshold / 10)
    return Certificate::Inconclusive;
  const Real dev = report.derived_commutator_deviation;
  if (dev < threshold) return Certificate::Abelian;
  if (dev > 100 * threshold) return Certificate::NonAbelian;
  return Certificate::Inconclusive;
}

}  // namespace nbint
