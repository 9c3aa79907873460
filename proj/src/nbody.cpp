#include "nbint/nbody.hpp"

#include "nbint/errors.hpp"
#include "nbint/linalg.hpp"
#include "nbint/real_roots.hpp"

#include <algorithm>

namespace nbint {

// ---------------------------------------------------------------------------
// Masses

namespace {

void check_masses(const std::vector<Real>& v) {
  if (v.size() < 2) throw InputError("need at least two masses");
  for (const Real& m : v)
    if (!(m > 0)) throw InputError("masses must be positive");
}

}  // namespace

MassVector MassVector::from_rationals(const std::vector<Rational>& m) {
  MassVector out;
  for (const Rational& q : m) out.values.push_back(to_real(q));
  check_masses(out.values);
  out.exact = m;
  return out;
}

MassVector MassVector::from_reals(const std::vector<Real>& m) {
  MassVector out;
  out.values = m;
  check_masses(out.values);
  return out;
}

MassVector MassVector::equal(int n, const Rational& each) {
  return from_rationals(std::vector<Rational>(static_cast<std::size_t>(n), each));
}

Real MassVector::total() const {
  Real s = 0;
  for (const Real& m : values) s += m;
  return s;
}

MassVector MassVector::normalized() const {
  if (exact) {
    Rational s = 0;
    for (const Rational& q : *exact) s += q;
    std::vector<Rational> out;
    for (const Rational& q : *exact) out.push_back(q / s);
    return from_rationals(out);
  }
  const Real s = total();
  std::vector<Real> out;
  for (const Real& m : values) out.push_back(m / s);
  return from_reals(out);
}

MassVector MassVector::permuted(const std::vector<int>& order) const {
  MassVector out;
  for (int k : order) out.values.push_back(values.at(static_cast<std::size_t>(k)));
  if (exact) {
    std::vector<Rational> e;
    for (int k : order) e.push_back(exact->at(static_cast<std::size_t>(k)));
    out.exact = e;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Configurations

int pair_index(int i, int j, int n) {
  if (i > j) std::swap(i, j);
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

PlanarConfiguration::PlanarConfiguration(CVector coords) : coords_(std::move(coords)) {
  if (coords_.size() % 2 != 0 || coords_.size() < 4) throw InputError("configuration needs 2n coordinates, n >= 2");
  branches_.assign(static_cast<std::size_t>(n() * (n() - 1) / 2), 1);
}

PlanarConfiguration::PlanarConfiguration(CVector coords, std::vector<int> branches) : PlanarConfiguration(std::move(coords)) {
  if (branches.size() != branches_.size()) throw InputError("wrong number of branch signs");
  branches_ = std::move(branches);
}

namespace {

Complex principal_distance(const PlanarConfiguration& q, int i, int j) {
  const Complex dx = q.x(i) - q.x(j), dy = q.y(i) - q.y(j);
  return std::sqrt(dx * dx + dy * dy);
}

}  // namespace

PlanarConfiguration PlanarConfiguration::with_distances(CVector coords, const std::vector<Complex>& targets) {
  PlanarConfiguration q(std::move(coords));
  const int n = q.n();
  if (targets.size() != q.branches_.size()) throw InputError("wrong number of target distances");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const int k = pair_index(i, j, n);
      const Complex r = principal_distance(q, i, j);
      q.branches_[k] = std::abs(r - targets[k]) <= std::abs(r + targets[k]) ? 1 : -1;
    }
  return q;
}

Complex PlanarConfiguration::distance(int i, int j) const {
  const Complex r = principal_distance(*this, i, j);
  return branches_[pair_index(i, j, n())] > 0 ? r : -r;
}

std::vector<Complex> PlanarConfiguration::distances() const {
  std::vector<Complex> out;
  for (int i = 0; i < n(); ++i)
    for (int j = i + 1; j < n(); ++j) out.push_back(distance(i, j));
  return out;
}

PlanarConfiguration PlanarConfiguration::scaled(const Complex& s) const {
  std::vector<Complex> targets = distances();
  for (Complex& r : targets) r *= s;
  return with_distances(coords_ * s, targets);
}

PlanarConfiguration PlanarConfiguration::rotated(const Real& theta) const {
  const int m = n();
  const Complex c(cos(theta)), s(sin(theta));
  CVector out(coords_.size());
  for (int i = 0; i < m; ++i) {
    out(i) = c * x(i) - s * y(i);
    out(m + i) = s * x(i) + c * y(i);
  }
  return PlanarConfiguration(out, branches_);
}

PlanarConfiguration PlanarConfiguration::conjugated() const {
  std::vector<Complex> targets = distances();
  for (Complex& r : targets) r = std::conj(r);
  return with_distances(coords_.conjugate(), targets);
}

PlanarConfiguration PlanarConfiguration::centered(const MassVector& m) const {
  if (m.size() != n()) throw InputError("mass/configuration size mismatch");
  Complex cx(0), cy(0);
  for (int i = 0; i < n(); ++i) {
    cx += Complex(m.values[i]) * x(i);
    cy += Complex(m.values[i]) * y(i);
  }
  cx /= Complex(m.total());
  cy /= Complex(m.total());
  CVector out = coords_;
  for (int i = 0; i < n(); ++i) {
    out(i) -= cx;
    out(n() + i) -= cy;
  }
  return PlanarConfiguration(out, branches_);
}

bool PlanarConfiguration::is_real(const Real& tol) const {
  for (Eigen::Index k = 0; k < coords_.size(); ++k)
    if (abs(coords_(k).imag()) > tol) return false;
  for (const Complex& r : distances())
    if (r.real() < 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Potential and derivatives

namespace {

struct PairData {
  int i, j;
  Complex dx, dy, r;
};

std::vector<PairData> pairs(const PlanarConfiguration& q) {
  std::vector<PairData> out;
  const int n = q.n();
  Real scale = 0;
  for (Eigen::Index k = 0; k < q.coords().size(); ++k) scale = std::max(scale, Real(abs(q.coords()(k))));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Complex dx = q.x(i) - q.x(j), dy = q.y(i) - q.y(j);
      const Complex r = q.distance(i, j);
      if (abs(r) <= Real(1e-30) * (1 + scale))
        throw SingularConfiguration("bodies " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                    " are at zero distance");
      out.push_back({i, j, dx, dy, r});
    }
  return out;
}

void check_sizes(const MassVector& m, const PlanarConfiguration& q) {
  if (m.size() != q.n()) throw InputError("mass/configuration size mismatch");
}

}  // namespace

Complex potential_value(const MassVector& m, const PlanarConfiguration& q) {
  check_sizes(m, q);
  Complex v(0);
  for (const PairData& p : pairs(q)) v += Complex(m.values[p.i] * m.values[p.j]) / p.r;
  return v;
}

CVector potential_gradient(const MassVector& m, const PlanarConfiguration& q) {
  check_sizes(m, q);
  const int n = q.n();
  CVector g = CVector::Zero(2 * n);
  for (const PairData& p : pairs(q)) {
    const Complex f = Complex(m.values[p.i] * m.values[p.j]) / (p.r * p.r * p.r);
    g(p.i) -= f * p.dx;
    g(n + p.i) -= f * p.dy;
    g(p.j) += f * p.dx;
    g(n + p.j) += f * p.dy;
  }
  return g;
}

CVector mass_scaled_acceleration(const MassVector& m, const PlanarConfiguration& q) {
  CVector a = potential_gradient(m, q);
  const int n = q.n();
  for (int i = 0; i < n; ++i) {
    a(i) /= Complex(m.values[i]);
    a(n + i) /= Complex(m.values[i]);
  }
  return a;
}

CMatrix potential_hessian(const MassVector& m, const PlanarConfiguration& q) {
  check_sizes(m, q);
  const int n = q.n();
  CMatrix h = CMatrix::Zero(2 * n, 2 * n);
  for (const PairData& p : pairs(q)) {
    const Complex mm(m.values[p.i] * m.values[p.j]);
    const Complex r2 = p.r * p.r;
    const Complex r3 = r2 * p.r, r5 = r3 * r2;
    const Complex d[2] = {p.dx, p.dy};
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        Complex blk = Real(3) * d[a] * d[b] / r5;
        if (a == b) blk -= Real(1) / r3;
        blk *= mm;
        const int ia = a * n + p.i, ib = b * n + p.i, ja = a * n + p.j, jb = b * n + p.j;
        h(ia, ib) += blk;
        h(ja, jb) += blk;
        h(ia, jb) -= blk;
        h(ja, ib) -= blk;
      }
  }
  return h;
}

CMatrix mass_scaled_hessian(const MassVector& m, const PlanarConfiguration& q) {
  CMatrix h = potential_hessian(m, q);
  const int n = q.n();
  for (int i = 0; i < 2 * n; ++i) h.row(i) /= Complex(m.values[i % n]);
  return h;
}

// ---------------------------------------------------------------------------
// Darboux points

DarbouxPoint make_darboux(const MassVector& m, const PlanarConfiguration& q) {
  DarbouxPoint d;
  d.config = q.centered(m);
  const CVector& c = d.config.coords();
  const CVector a = mass_scaled_acceleration(m, d.config);
  const Complex cc = c.dot(c);  // Hermitian: conj(c) . c
  if (abs(cc) == 0) throw SingularConfiguration("all bodies at the centre of mass");
  d.multiplier = c.dot(a) / cc;
  d.residual = max_abs(a - d.multiplier * c);
  return d;
}

DarbouxPoint normalize_multiplier(const MassVector& m, const DarbouxPoint& d) {
  if (abs(d.multiplier) == 0) throw DegenerateDarboux("multiplier is zero");
  const Complex s = principal_cbrt(-d.multiplier);
  DarbouxPoint out = make_darboux(m, d.config.scaled(s));
  out.tolerance = d.tolerance;
  return out;
}

DarbouxPoint regular_ngon(int n, const Real& mass) {
  if (n < 2) throw InputError("regular polygon needs n >= 2");
  CVector c(2 * n);
  for (int i = 0; i < n; ++i) {
    const Real th = 2 * pi() * i / n;
    c(i) = Complex(cos(th));
    c(n + i) = Complex(sin(th));
  }
  const MassVector m = MassVector::from_reals(std::vector<Real>(static_cast<std::size_t>(n), mass));
  return normalize_multiplier(m, make_darboux(m, PlanarConfiguration(c)));
}

DarbouxPoint lagrange_equilateral(const MassVector& m) {
  return lagrange_complex(m, Complex(1), Complex(1), Complex(1));
}

DarbouxPoint lagrange_complex(const MassVector& m, const Complex& r12, const Complex& r13, const Complex& r23) {
  if (m.size() != 3) throw InputError("Lagrange configuration needs three masses");
  const Complex x3 = (r12 * r12 + r13 * r13 - r23 * r23) / (Real(2) * r12);
  const Complex y3 = std::sqrt(r13 * r13 - x3 * x3);
  CVector c(6);
  c << Complex(0), r12, x3, Complex(0), Complex(0), y3;
  const auto q = PlanarConfiguration::with_distances(c, {r12, r13, r23});
  return normalize_multiplier(m, make_darboux(m, q));
}

Polynomial<MPoly> euler_quintic(bool complex_order) {
  const MPoly m1 = MPoly::variable(0), m2 = MPoly::variable(1), m3 = MPoly::variable(2);
  if (!complex_order)
    return Polynomial<MPoly>({m2 + m3, 3 * m3 + 2 * m2, 3 * m3 + m2, MPoly(0) - 3 * m1 - m2, MPoly(0) - 3 * m1 - 2 * m2,
                              MPoly(0) - m1 - m2});
  return Polynomial<MPoly>({m2 + m3, 3 * m3 + 2 * m2, MPoly(0) - 2 * m1 + 3 * m3 + m2,
                            MPoly(0) - 3 * m1 + 2 * m3 - m2, MPoly(0) - 3 * m1 - 2 * m2, MPoly(0) - m1 - m2});
}

DarbouxPoint collinear_point(const MassVector& m, const Complex& rho, bool complex_order) {
  if (m.size() != 3) throw InputError("Euler configuration needs three masses");
  CVector c(6);
  c << Complex(-1), Complex(0), rho, Complex(0), Complex(0), Complex(0);
  std::vector<Complex> targets;
  if (complex_order) targets = {Complex(-1), rho + Real(1), -rho};
  else targets = {Complex(1), rho + Real(1), rho};
  return normalize_multiplier(m, make_darboux(m, PlanarConfiguration::with_distances(c, targets)));
}

namespace {

Real rational_to_real(const Rational& q) { return to_real(q); }

}  // namespace

EulerResult euler_collinear(const MassVector& m, bool complex_order) {
  if (m.size() != 3) throw InputError("Euler configuration needs three masses");
  EulerResult out;
  out.quintic = euler_quintic(complex_order);
  std::vector<Complex> coeffs;
  if (m.exact) {
    const std::array<Rational, 3> at{(*m.exact)[0], (*m.exact)[1], (*m.exact)[2]};
    std::vector<Rational> q;
    for (const MPoly& c : out.quintic.coefficients()) q.push_back(c.evaluate(at));
    const QPoly L(q);
    out.real_root_count = static_cast<int>(real_root_isolation(L).size());
    for (const Rational& r : q) coeffs.emplace_back(to_real(r));
  } else {
    const std::array<Real, 3> at{m.values[0], m.values[1], m.values[2]};
    std::vector<Real> q;
    for (const MPoly& c : out.quintic.coefficients()) q.push_back(c.evaluate_as<Real>(at, &rational_to_real));
    for (const Real& r : q) coeffs.emplace_back(r);
  }
  out.roots = linalg::polynomial_roots(coeffs);
  std::sort(out.roots.begin(), out.roots.end(), [](const Complex& a, const Complex& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  for (Complex& r : out.roots)
    if (abs(r.imag()) < Real(1e-28)) r = Complex(r.real());
  if (!m.exact) {
    out.real_root_count = 0;
    for (const Complex& r : out.roots)
      if (r.imag() == 0) ++out.real_root_count;
  }
  for (const Complex& rho : out.roots) out.points.push_back(collinear_point(m, rho, complex_order));
  return out;
}

// ---------------------------------------------------------------------------
// Newton refinement

NewtonResult newton_refine(const MassVector& m, const PlanarConfiguration& guess, const NewtonOptions& opts) {
  DarbouxPoint d = make_darboux(m, guess);  // throws on coincident bodies
  if (abs(d.multiplier) == 0) throw DegenerateDarboux("guess has zero multiplier");
  PlanarConfiguration c = d.config.scaled(principal_cbrt(-d.multiplier));
  const int n2 = 2 * c.n();
  NewtonResult out;
  for (int it = 0;; ++it) {
    CVector f = mass_scaled_acceleration(m, c) + c.coords();
    if (max_abs(f) <= opts.tolerance) break;
    if (it >= opts.max_iterations) throw ConvergenceError("Newton refinement did not converge");
    // Pin the coordinate that moves fastest under rotation.
    const CVector& x = c.coords();
    int pin = 0;
    Real best = -1;
    for (int k = 0; k < n2; ++k) {
      const Complex rot = k < c.n() ? -x(c.n() + k) : x(k - c.n());
      if (abs(rot) > best) {
        best = abs(rot);
        pin = k;
      }
    }
    const CMatrix jac = mass_scaled_hessian(m, c) + CMatrix::Identity(n2, n2);
    CMatrix reduced(n2, n2 - 1);
    for (int k = 0, col = 0; k < n2; ++k)
      if (k != pin) reduced.col(col++) = jac.col(k);
    const RVector sv = linalg::singular_values(reduced);
    if (sv(sv.size() - 1) <= Real(1e-28) * sv(0)) throw ConvergenceError("singular Jacobian under gauge fixing");
    const CVector step = linalg::solve_least_squares(reduced, -f);
    CVector next = x;
    for (int k = 0, col = 0; k < n2; ++k)
      if (k != pin) next(k) += step(col++);
    c = PlanarConfiguration::with_distances(next, c.distances());
    ++out.iterations;
  }
  out.point = normalize_multiplier(m, make_darboux(m, c));
  return out;
}

// ---------------------------------------------------------------------------
// Phase space

Real hamiltonian(const MassVector& m, const RVector& q, const RVector& p) {
  const int n = m.size();
  if (q.size() != 2 * n || p.size() != 2 * n) throw InputError("phase-space size mismatch");
  Real k = 0;
  for (int i = 0; i < 2 * n; ++i) k += p(i) * p(i) / (2 * m.values[i % n]);
  CVector c(2 * n);
  for (int i = 0; i < 2 * n; ++i) c(i) = Complex(q(i));
  return k - potential_value(m, PlanarConfiguration(c)).real();
}

Real angular_momentum(const RVector& q, const RVector& p) {
  const Eigen::Index n = q.size() / 2;
  Real c = 0;
  for (Eigen::Index i = 0; i < n; ++i) c += q(i) * p(n + i) - q(n + i) * p(i);
  return c;
}

}  // namespace nbint
