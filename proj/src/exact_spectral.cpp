#include "nbint/errors.hpp"
#include "nbint/linalg.hpp"
#include "nbint/polynomial.hpp"
#include "nbint/real_roots.hpp"
#include "nbint/spectral.hpp"

#include <algorithm>

namespace nbint {

namespace {

using QN = QuadraticNumber;

CMatrix to_numeric(const ExactMatrix<QN>& a) {
  const Eigen::Index n = static_cast<Eigen::Index>(a.size());
  CMatrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = Complex(a[i][j].to_real());
  return out;
}

// sqrt of a positive rational d2 inside Q(sqrt(radicand)).
QN field_sqrt(const QN& d2, const Integer& radicand) {
  if (!d2.is_rational() || d2.rational_part() <= 0) throw InputError("distance outside the quadratic field");
  Rational root;
  if (exact_sqrt(d2.rational_part(), root)) return QN(root);
  if (radicand != 0 && exact_sqrt(d2.rational_part() / Rational(radicand), root)) return QN(0, root, radicand);
  throw InputError("distance outside the quadratic field");
}

ExactConfiguration assemble(std::vector<Rational> masses, std::vector<QN> coords, const Integer& radicand) {
  ExactConfiguration c{std::move(masses), std::move(coords), {}};
  const int n = static_cast<int>(c.masses.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const QN dx = c.coords[i] - c.coords[j], dy = c.coords[n + i] - c.coords[n + j];
      c.distances.push_back(field_sqrt(dx * dx + dy * dy, radicand));
    }
  return c;
}

}  // namespace

ExactConfiguration exact_lagrange(const std::vector<Rational>& masses) {
  if (masses.size() != 3) throw InputError("Lagrange configuration needs three masses");
  const QN half(Rational(1, 2));
  const QN h(0, Rational(1, 2), 3);
  return assemble(masses, {QN(0), QN(1), half, QN(0), QN(0), h}, 3);
}

ExactConfiguration exact_ngon(int n) {
  const QN half(Rational(1, 2));
  std::vector<QN> xs, ys;
  Integer radicand;
  switch (n) {
    case 3:
      xs = {QN(1), -half, -half};
      ys = {QN(0), QN(0, Rational(1, 2), 3), QN(0, Rational(-1, 2), 3)};
      radicand = 3;
      break;
    case 4:
      xs = {QN(1), QN(0), QN(-1), QN(0)};
      ys = {QN(0), QN(1), QN(0), QN(-1)};
      radicand = 2;
      break;
    case 6: {
      const QN s(0, Rational(1, 2), 3);
      xs = {QN(1), half, -half, QN(-1), -half, half};
      ys = {QN(0), s, s, QN(0), -s, -s};
      radicand = 3;
      break;
    }
    default:
      throw InputError("exact regular polygons are available for n = 3, 4, 6");
  }
  std::vector<QN> coords = xs;
  coords.insert(coords.end(), ys.begin(), ys.end());
  return assemble(std::vector<Rational>(static_cast<std::size_t>(n), Rational(1)), coords, radicand);
}

ExactConfiguration exact_collinear(const std::vector<Rational>& masses, const Rational& rho) {
  if (masses.size() != 3) throw InputError("Euler configuration needs three masses");
  if (rho <= 0) throw InputError("exact collinear configuration needs rho > 0");
  return assemble(masses, {QN(-1), QN(0), QN(rho), QN(0), QN(0), QN(0)}, 0);
}

namespace {

// a_i = -sum_j m_j (q_i - q_j) / r^3, in the block layout.
std::vector<QN> exact_acceleration(const ExactConfiguration& c) {
  const int n = static_cast<int>(c.masses.size());
  std::vector<QN> a(static_cast<std::size_t>(2 * n), QN(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const QN r = c.distances[pair_index(i, j, n)];
      const QN f = QN(c.masses[j]) / (r * r * r);
      a[i] = a[i] - f * (c.coords[i] - c.coords[j]);
      a[n + i] = a[n + i] - f * (c.coords[n + i] - c.coords[n + j]);
    }
  return a;
}

}  // namespace

QuadraticNumber exact_multiplier(const ExactConfiguration& c) {
  const int n = static_cast<int>(c.masses.size());
  Rational total = 0;
  for (const Rational& m : c.masses) total += m;
  QN cx(0), cy(0);
  for (int i = 0; i < n; ++i) {
    cx = cx + QN(c.masses[i]) * c.coords[i];
    cy = cy + QN(c.masses[i]) * c.coords[n + i];
  }
  cx = cx / QN(total);
  cy = cy / QN(total);
  const auto a = exact_acceleration(c);
  std::optional<QN> alpha;
  for (int k = 0; k < 2 * n; ++k) {
    const QN centred = c.coords[k] - (k < n ? cx : cy);
    if (centred == QN(0)) {
      if (a[k] != QN(0)) throw InputError("configuration is not central");
      continue;
    }
    const QN ratio = a[k] / centred;
    if (alpha && *alpha != ratio) throw InputError("configuration is not central");
    alpha = ratio;
  }
  if (!alpha || *alpha == QN(0)) throw DegenerateDarboux("zero multiplier");
  return *alpha;
}

ExactMatrix<QuadraticNumber> exact_w(const ExactConfiguration& c) {
  const int n = static_cast<int>(c.masses.size());
  const QN scale = QN(-1) / exact_multiplier(c);
  ExactMatrix<QN> h(static_cast<std::size_t>(2 * n), std::vector<QN>(static_cast<std::size_t>(2 * n), QN(0)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const QN r = c.distances[pair_index(i, j, n)];
      const QN r3 = r * r * r, r5 = r3 * r * r;
      const QN d[2] = {c.coords[i] - c.coords[j], c.coords[n + i] - c.coords[n + j]};
      const QN mm(c.masses[i] * c.masses[j]);
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          QN blk = QN(3) * d[a] * d[b] / r5;
          if (a == b) blk = blk - QN(1) / r3;
          blk = blk * mm;
          const int ia = a * n + i, ib = b * n + i, ja = a * n + j, jb = b * n + j;
          h[ia][ib] = h[ia][ib] + blk;
          h[ja][jb] = h[ja][jb] + blk;
          h[ia][jb] = h[ia][jb] - blk;
          h[ja][ib] = h[ja][ib] - blk;
        }
    }
  for (int row = 0; row < 2 * n; ++row) {
    const QN f = scale / QN(c.masses[row % n]);
    for (QN& e : h[row]) e = e * f;
  }
  return h;
}

SpectralReport exact_spectrum(const ExactMatrix<QuadraticNumber>& w) {
  SpectralReport out;
  out.exact_path = true;
  out.cluster_tolerance = 0;
  const Polynomial<QN> cp = characteristic_polynomial(w);
  out.characteristic_polynomial = cp.coefficients();
  const CMatrix numeric = to_numeric(w);
  const Eigen::Index n = numeric.rows();
  const Real threshold = Real(1e-24) * std::max(Real(1), linalg::operator_norm(numeric));

  bool rational = true;
  for (const QN& c : cp.coefficients()) rational = rational && c.is_rational();

  auto numeric_roots = [](const auto& factor, auto to_complex) {
    std::vector<Complex> c;
    for (const auto& x : factor.coefficients()) c.push_back(to_complex(x));
    return linalg::polynomial_roots(c);
  };

  if (rational) {
    std::vector<Rational> q;
    for (const QN& c : cp.coefficients()) q.push_back(c.rational_part());
    for (const auto& [factor, mult] : square_free_decomposition(QPoly(q))) {
      int real_count = 0;
      for (const RootInterval& iv : real_root_isolation(factor)) {
        ++real_count;
        Cluster c;
        c.algebraic = mult;
        if (auto r = rational_root_in(factor, iv)) {
          c.exact = *r;
          c.eigenvalue = Complex(to_real(*r));
          c.geometric = static_cast<int>(n) - static_cast<int>(exact_rank(shifted(w, QN(*r))));
        } else {
          const RootInterval tight = refine_root(factor, iv, Rational(1, Integer(1) << 120));
          c.eigenvalue = Complex(to_real((tight.lo + tight.hi) / 2));
          c.geometric = static_cast<int>(n - linalg::rank(numeric - c.eigenvalue * CMatrix::Identity(n, n), threshold));
        }
        out.clusters.push_back(c);
      }
      if (real_count < factor.degree())
        for (const Complex& z : numeric_roots(factor, [](const Rational& x) { return Complex(to_real(x)); })) {
          if (abs(z.imag()) < Real(1e-20)) continue;
          Cluster c;
          c.algebraic = mult;
          c.eigenvalue = z;
          c.geometric = static_cast<int>(n - linalg::rank(numeric - z * CMatrix::Identity(n, n), threshold));
          out.clusters.push_back(c);
        }
    }
  } else {
    // Multiplicities are still exact (Yun over the quadratic field); values are numeric.
    for (const auto& [factor, mult] : square_free_decomposition(cp))
      for (const Complex& z : numeric_roots(factor, [](const QN& x) { return Complex(x.to_real()); })) {
        Cluster c;
        c.algebraic = mult;
        c.eigenvalue = abs(z.imag()) < Real(1e-25) ? Complex(z.real()) : z;
        c.geometric = static_cast<int>(n - linalg::rank(numeric - c.eigenvalue * CMatrix::Identity(n, n), threshold));
        out.clusters.push_back(c);
      }
  }
  std::sort(out.clusters.begin(), out.clusters.end(), [](const Cluster& a, const Cluster& b) {
    if (a.eigenvalue.real() != b.eigenvalue.real()) return a.eigenvalue.real() < b.eigenvalue.real();
    return a.eigenvalue.imag() < b.eigenvalue.imag();
  });
  return out;
}

SpectralReport analyze_spectrum(const WMatrix& w, const Real& tol) {
  if (w.exact) return exact_spectrum(*w.exact);
  return spectrum(w.entries, tol);
}

}  // namespace nbint
