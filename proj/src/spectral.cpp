#include "nbint/spectral.hpp"

#include "nbint/errors.hpp"
#include "nbint/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace nbint {

namespace {

Real spectral_scale(const CVector& eig) { return std::max(Real(1), max_abs(eig)); }

Real rank_threshold(const Real& tol, const Real& scale) {
  return std::max(Real(tol * tol), Real(1e-24)) * scale;
}

int nullity(const CMatrix& a, const Real& threshold) {
  const RVector sv = linalg::singular_values(a);
  int k = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) <= threshold) ++k;
  return k + static_cast<int>(a.cols() - sv.size());
}

bool cluster_less(const Cluster& a, const Cluster& b) {
  if (a.eigenvalue.real() != b.eigenvalue.real()) return a.eigenvalue.real() < b.eigenvalue.real();
  return a.eigenvalue.imag() < b.eigenvalue.imag();
}

}  // namespace

WMatrix build_w(const MassVector& m, const DarbouxPoint& d) {
  if (abs(d.multiplier + Real(1)) > Real(1e-9)) throw InputError("W needs a Darboux point with multiplier -1");
  return {mass_scaled_hessian(m, d.config), m, d, std::nullopt};
}

const Cluster* SpectralReport::find(const Complex& value, const Real& tol) const {
  const Cluster* best = nullptr;
  for (const Cluster& c : clusters)
    if (abs(c.eigenvalue - value) <= tol && (!best || abs(c.eigenvalue - value) < abs(best->eigenvalue - value)))
      best = &c;
  return best;
}

SpectralReport spectrum(const CMatrix& w, const Real& tol) {
  SpectralReport out;
  out.cluster_tolerance = tol;
  const CVector eig = linalg::eigenvalues(w);
  const Real scale = spectral_scale(eig);
  const Eigen::Index n = eig.size();

  // Single-linkage clustering.
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (abs(eig(i) - eig(j)) <= tol * scale) parent[root(i)] = root(j);

  std::vector<std::vector<int>> groups(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) groups[root(i)].push_back(i);
  const Real threshold = rank_threshold(tol, std::max(scale, linalg::operator_norm(w)));
  for (const auto& g : groups) {
    if (g.empty()) continue;
    Cluster c;
    Complex sum(0);
    for (int i : g) sum += eig(i);
    c.eigenvalue = sum / Real(static_cast<int>(g.size()));
    c.algebraic = static_cast<int>(g.size());
    c.geometric = nullity(w - c.eigenvalue * CMatrix::Identity(n, n), threshold);
    c.geometric = std::min(c.geometric, c.algebraic);
    out.clusters.push_back(c);
  }
  std::sort(out.clusters.begin(), out.clusters.end(), cluster_less);
  for (std::size_t i = 0; i < out.clusters.size(); ++i)
    for (std::size_t j = i + 1; j < out.clusters.size(); ++j)
      if (abs(out.clusters[i].eigenvalue - out.clusters[j].eigenvalue) <= 100 * tol * scale)
        out.tolerance_warning = true;
  return out;
}

bool mandatory_spectrum_check(const CMatrix& w, const Real& tol) {
  const CVector eig = linalg::eigenvalues(w);
  std::vector<bool> used(static_cast<std::size_t>(eig.size()), false);
  for (const Real& target : {Real(2), Real(-1), Real(0), Real(0)}) {
    int best = -1;
    for (Eigen::Index i = 0; i < eig.size(); ++i)
      if (!used[i] && abs(eig(i) - Complex(target)) <= tol &&
          (best < 0 || abs(eig(i) - Complex(target)) < abs(eig(best) - Complex(target))))
        best = static_cast<int>(i);
    if (best < 0) return false;
    used[best] = true;
  }
  return true;
}

CMatrix symplectic_j(int n) { return block_rotation(n, pi() / 2); }

CMatrix block_rotation(int n, const Real& theta) {
  // Exact entries for the quarter turn.
  const bool quarter = theta == pi() / 2;
  const Complex c = quarter ? Complex(0) : Complex(cos(theta));
  const Complex s = quarter ? Complex(1) : Complex(sin(theta));
  CMatrix r = CMatrix::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    r(i, i) = c;
    r(i, n + i) = -s;
    r(n + i, i) = s;
    r(n + i, n + i) = c;
  }
  return r;
}

std::string to_string(DecouplingKind k) {
  switch (k) {
    case DecouplingKind::InvariantPlane:
      return "invariant-plane";
    case DecouplingKind::RankOne:
      return "rank-one";
    case DecouplingKind::None:
      break;
  }
  return "none";
}

DecouplingReport partial_decoupling(const WMatrix& wm, const Real& tol, bool include_trivial) {
  const CMatrix& w = wm.entries;
  const int n2 = static_cast<int>(w.rows()), n = n2 / 2;
  const CMatrix j = symplectic_j(n);
  const CMatrix k = -j * w * j;  // J^-1 = -J
  const SpectralReport sr = spectrum(w, tol);
  const Real scale = std::max(Real(1), linalg::operator_norm(w));
  const Real threshold = rank_threshold(tol, scale);

  CMatrix trivial(n2, 4);
  trivial.setZero();
  for (int i = 0; i < n; ++i) {
    trivial(i, 0) = Complex(1);
    trivial(n + i, 1) = Complex(1);
  }
  trivial.col(2) = wm.source.config.coords();
  trivial.col(3) = j * wm.source.config.coords();
  // Orthogonal projector onto the complement of the trivial span.
  const CMatrix tq = linalg::orthonormal_columns(trivial);
  const CMatrix proj = CMatrix::Identity(n2, n2) - tq * tq.adjoint();

  DecouplingReport best;
  for (const Cluster& c : sr.clusters) {
    CMatrix stacked(2 * n2, n2);
    stacked << w - c.eigenvalue * CMatrix::Identity(n2, n2), k - c.eigenvalue * CMatrix::Identity(n2, n2);
    const CMatrix basis = linalg::null_space(stacked, threshold);
    if (basis.cols() == 0) continue;

    CVector v;
    int dim = 0;
    if (include_trivial) {
      dim = static_cast<int>(basis.cols());
      v = basis.col(0);
    } else {
      const auto svd = linalg::svd_right(proj * basis);
      for (Eigen::Index i = 0; i < svd.values.size(); ++i)
        if (svd.values(i) > Real(1e-8)) ++dim;
      if (dim == 0) continue;
      v = basis * svd.v.col(0);
    }
    v /= norm2(v);

    DecouplingReport r;
    r.decoupled = true;
    r.dimension = dim;
    r.kind = dim >= 2 ? DecouplingKind::InvariantPlane : DecouplingKind::RankOne;
    r.lambda = c.eigenvalue;
    r.residual = std::max(norm2(w * v - c.eigenvalue * v), norm2(k * v - c.eigenvalue * v));
    const CVector top = v.head(n), bottom = v.tail(n);
    const Complex i1 = imag_unit();
    r.rank_one_defect = std::min(norm2(bottom - i1 * top), norm2(bottom + i1 * top));
    r.witness = v;
    if (!best.decoupled || (best.kind == DecouplingKind::RankOne && r.kind == DecouplingKind::InvariantPlane))
      best = r;
  }
  return best;
}

bool is_aligned_form(const CMatrix& w, const Real& tol) {
  const Eigen::Index n = w.rows() / 2;
  const Real scale = std::max(Real(1), linalg::operator_norm(w));
  const CMatrix a = w.topLeftCorner(n, n);
  Real dev = frobenius(w.topRightCorner(n, n));
  dev = std::max(dev, frobenius(w.bottomLeftCorner(n, n)));
  dev = std::max(dev, frobenius(w.bottomRightCorner(n, n) + a / Real(2)));
  return dev <= tol * scale;
}

AlignedReport aligned_decoupling(const CMatrix& w, const Real& tol) {
  if (!is_aligned_form(w, tol)) throw NotAligned("W is not of the form diag(A, -A/2)");
  const Eigen::Index n = w.rows() / 2;
  const CMatrix a = w.topLeftCorner(n, n);
  const CVector eig = linalg::eigenvalues(a);
  const Real scale = std::max(Real(1), linalg::operator_norm(a));
  // Drop the eigenvalue closest to zero (the translation).
  Eigen::Index drop = 0;
  for (Eigen::Index i = 1; i < eig.size(); ++i)
    if (abs(eig(i)) < abs(eig(drop))) drop = i;
  AlignedReport out;
  out.reduced_determinant = Complex(1);
  int zeros = 0;
  for (Eigen::Index i = 0; i < eig.size(); ++i) {
    if (abs(eig(i)) <= tol * scale) ++zeros;
    if (i != drop) out.reduced_determinant *= eig(i);
  }
  out.decoupled = zeros >= 2;
  if (out.decoupled) {
    const CMatrix ker = linalg::null_space(a, Real(tol * scale));
    CVector e = CVector::Ones(n) / sqrt(Real(static_cast<int>(n)));
    // Kernel vector furthest from the translation direction.
    const auto svd = linalg::svd_right(ker - e * (e.adjoint() * ker));
    CVector wv = ker * svd.v.col(0);
    CVector v = CVector::Zero(2 * n);
    v.head(n) = wv / norm2(wv);
    out.witness = v;
  }
  return out;
}

Real equal_mass_lambda(int n) {
  if (n < 3) throw InputError("equal_mass_lambda needs n >= 3");
  const Real p = pi();
  Real sum = 0;
  for (int j = 1; j < n; ++j) sum += 1 / sin(p * j / n);
  return 2 - (2 * sin(p / n) / (1 - cos(p / n))) / sum;
}

EigenvectorCheck verify_equal_mass_eigenvector(int n) {
  const DarbouxPoint d = regular_ngon(n);
  const WMatrix wm = build_w(MassVector::equal(n), d);
  CVector v(2 * n);
  for (int i = 0; i < n; ++i) {
    const Real th = 4 * pi() * i / n;
    v(i) = Complex(cos(th));
    v(n + i) = Complex(sin(th));
  }
  const CMatrix j = symplectic_j(n);
  EigenvectorCheck out;
  out.lambda = equal_mass_lambda(n);
  const Complex l(out.lambda);
  out.residual_w = norm2(CVector(wm.entries * v - l * v)) / norm2(v);
  // J^-1 = -J, applied as matrix-vector products.
  const CVector jv = j * v;
  const CVector wjv = wm.entries * jv;
  const CVector kv = -(j * wjv);
  out.residual_k = norm2(CVector(kv - l * v)) / norm2(v);
  return out;
}

}  // namespace nbint
