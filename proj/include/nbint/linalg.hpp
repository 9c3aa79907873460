#pragma once

// Dense complex linear algebra in binary128. The heavy Eigen instantiations
// live in a single translation unit (linalg.cpp).

#include "nbint/numeric.hpp"

#include <vector>

namespace nbint::linalg {

/// All eigenvalues of a square matrix (unordered).
CVector eigenvalues(const CMatrix& a);

/// Eigenvalues plus eigenvectors (columns), from a complex Schur decomposition.
struct EigenDecomposition {
  CVector values;
  CMatrix vectors;
};
EigenDecomposition eigen_decomposition(const CMatrix& a);

/// Singular values in decreasing order.
RVector singular_values(const CMatrix& a);

/// Orthonormal basis (columns) of the right null space: right singular vectors
/// whose singular value is <= threshold.
CMatrix null_space(const CMatrix& a, const Real& threshold);

/// Singular values (decreasing) with the full right singular basis. Rows are
/// zero-padded when there are fewer rows than columns, so V is always square.
struct SingularDecomposition {
  RVector values;
  CMatrix v;
};
SingularDecomposition svd_right(const CMatrix& a);

/// Orthonormal basis of the column span of a full-column-rank matrix.
CMatrix orthonormal_columns(const CMatrix& a);

/// Numerical rank with the given absolute singular-value threshold.
int rank(const CMatrix& a, const Real& threshold);

/// Least-squares solution of a x = b (column-pivoting QR).
CVector solve_least_squares(const CMatrix& a, const CVector& b);

/// Solves the square system a x = b with partial pivoting LU.
CMatrix solve(const CMatrix& a, const CMatrix& b);

/// Spectral norm of a matrix.
Real operator_norm(const CMatrix& a);

/// Roots of a polynomial given by ascending complex coefficients (companion
/// matrix eigenvalues polished by a few Newton steps).
std::vector<Complex> polynomial_roots(const std::vector<Complex>& ascending);

}  // namespace nbint::linalg
