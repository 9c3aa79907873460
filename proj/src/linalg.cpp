#include "nbint/linalg.hpp"

#include "nbint/errors.hpp"

#include <Eigen/Dense>

namespace nbint::linalg {

CVector eigenvalues(const CMatrix& a) {
  if (a.rows() == 0) return CVector();
  Eigen::ComplexEigenSolver<CMatrix> solver(a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw ConvergenceError("complex eigensolver failed");
  return solver.eigenvalues();
}

EigenDecomposition eigen_decomposition(const CMatrix& a) {
  Eigen::ComplexEigenSolver<CMatrix> solver(a, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) throw ConvergenceError("complex eigensolver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RVector singular_values(const CMatrix& a) {
  Eigen::JacobiSVD<CMatrix> svd(a);
  return svd.singularValues();
}

SingularDecomposition svd_right(const CMatrix& a) {
  const Eigen::Index n = a.cols();
  if (n == 0) return {RVector(), CMatrix(0, 0)};
  // Pad to a square matrix so the full V is always available.
  CMatrix work = a;
  if (work.rows() < n) {
    CMatrix padded = CMatrix::Zero(n, n);
    padded.topRows(work.rows()) = work;
    work = padded;
  }
  Eigen::JacobiSVD<CMatrix> svd(work, Eigen::ComputeFullV);
  return {svd.singularValues(), svd.matrixV()};
}

CMatrix orthonormal_columns(const CMatrix& a) {
  Eigen::HouseholderQR<CMatrix> qr(a);
  return qr.householderQ() * CMatrix::Identity(a.rows(), a.cols());
}

CMatrix null_space(const CMatrix& a, const Real& threshold) {
  const Eigen::Index n = a.cols();
  if (n == 0) return CMatrix(0, 0);
  const SingularDecomposition svd = svd_right(a);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < n; ++i)
    if (svd.values(i) <= threshold) keep.push_back(i);
  CMatrix basis(n, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) basis.col(static_cast<Eigen::Index>(k)) = svd.v.col(keep[k]);
  return basis;
}

int rank(const CMatrix& a, const Real& threshold) {
  const RVector s = singular_values(a);
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > threshold) ++r;
  return r;
}

CVector solve_least_squares(const CMatrix& a, const CVector& b) {
  return a.colPivHouseholderQr().solve(b);
}

CMatrix solve(const CMatrix& a, const CMatrix& b) { return a.partialPivLu().solve(b); }

Real operator_norm(const CMatrix& a) {
  if (a.size() == 0) return Real(0);
  return singular_values(a)(0);
}

std::vector<Complex> polynomial_roots(const std::vector<Complex>& ascending) {
  std::vector<Complex> c = ascending;
  while (!c.empty() && c.back() == Complex(0)) c.pop_back();
  if (c.size() < 2) return {};
  const int n = static_cast<int>(c.size()) - 1;
  CMatrix companion = CMatrix::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = Complex(1);
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -c[i] / c[n];
  CVector ev = eigenvalues(companion);
  std::vector<Complex> roots(ev.data(), ev.data() + ev.size());
  for (Complex& z : roots) {
    for (int it = 0; it < 8; ++it) {
      Complex p = c[n], dp = Complex(0);
      for (int k = n - 1; k >= 0; --k) {
        dp = dp * z + p;
        p = p * z + c[k];
      }
      if (dp == Complex(0)) break;
      const Complex step = p / dp;
      z -= step;
      if (std::abs(step) <= Real(1e-32) * std::max(Real(1), Real(std::abs(z)))) break;
    }
  }
  return roots;
}

}  // namespace nbint::linalg
