#pragma once

// Floating-point carrier types. Spectra and monodromy run in IEEE binary128
// (~34 significant digits) so that defective double eigenvalues split by
// O(sqrt(eps)) stay far below the clustering tolerances.

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/float128.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <string>
#include <vector>

namespace nbint {

using Real = boost::multiprecision::float128;
using Complex = std::complex<Real>;
using CVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
using CMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
using RMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

inline Real pi() { return boost::math::constants::pi<Real>(); }

inline Complex imag_unit() { return Complex(Real(0), Real(1)); }

inline double to_double(const Real& x) { return static_cast<double>(x); }

inline std::complex<double> to_double(const Complex& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

inline Complex to_complex(std::complex<double> z) { return Complex(Real(z.real()), Real(z.imag())); }

/// Principal cube root.
inline Complex principal_cbrt(const Complex& z) {
  if (z == Complex(0)) return Complex(0);
  return std::exp(std::log(z) / Real(3));
}

/// Largest modulus entry.
inline Real max_abs(const CVector& v) {
  Real m = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) m = std::max(m, Real(std::abs(v(i))));
  return m;
}

/// Euclidean (Hermitian) norm.
inline Real norm2(const CVector& v) {
  Real s = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += std::norm(v(i));
  return sqrt(s);
}

/// Frobenius norm.
inline Real frobenius(const CMatrix& m) {
  Real s = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) s += std::norm(m(i, j));
  return sqrt(s);
}

/// Formats a real with the given number of significant digits.
std::string format_real(const Real& x, int digits = 20);

}  // namespace nbint
