#pragma once

// The mass-scaled Hessian W at a multiplier -1 Darboux point, its spectrum,
// and the partial-decoupling tests (common eigenvectors of W and J^-1 W J).

#include "nbint/exact_linalg.hpp"
#include "nbint/nbody.hpp"
#include "nbint/numeric.hpp"
#include "nbint/quadratic_field.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nbint {

struct WMatrix {
  CMatrix entries;
  MassVector masses;
  DarbouxPoint source;
  /// Exact entries when the configuration is known in a quadratic field.
  std::optional<ExactMatrix<QuadraticNumber>> exact;
};

/// W_ij = (1/m_i) d^2V/dq_i dq_j at d. Throws InputError unless d has
/// multiplier -1 (to 1e-9).
WMatrix build_w(const MassVector& m, const DarbouxPoint& d);

struct Cluster {
  Complex eigenvalue;
  int algebraic = 0;
  int geometric = 0;
  std::optional<Rational> exact;  // set when the exact path proved it rational
};

struct SpectralReport {
  std::vector<Cluster> clusters;
  Real cluster_tolerance = Real(1e-8);
  bool tolerance_warning = false;  // some gap between clusters is within 100 x tolerance
  bool exact_path = false;
  /// Characteristic polynomial, ascending, when the exact path ran.
  std::vector<QuadraticNumber> characteristic_polynomial;

  const Cluster* find(const Complex& value, const Real& tol) const;
};

/// Numerical spectrum: eigenvalues clustered within tol * max(1, spectral
/// radius); geometric multiplicity = nullity of (W - mu I) at singular-value
/// threshold max(tol^2, 1e-24) * scale.
SpectralReport spectrum(const CMatrix& w, const Real& tol = Real(1e-8));

/// Exact spectrum from the characteristic polynomial (Berkowitz) and its
/// square-free decomposition. Rational eigenvalues are identified exactly and
/// their geometric multiplicities come from exact ranks.
SpectralReport exact_spectrum(const ExactMatrix<QuadraticNumber>& w);

/// Uses the exact path when W carries exact entries.
SpectralReport analyze_spectrum(const WMatrix& w, const Real& tol = Real(1e-8));

/// {2, -1, 0, 0} contained in the spectrum (with multiplicity) within tol.
bool mandatory_spectrum_check(const CMatrix& w, const Real& tol = Real(1e-9));

/// J = [[0, -I], [I, 0]], which is also the rotation R_{pi/2}.
CMatrix symplectic_j(int n);
/// Block rotation R_theta = [[cos I, -sin I], [sin I, cos I]].
CMatrix block_rotation(int n, const Real& theta);

enum class DecouplingKind { None, InvariantPlane, RankOne };
std::string to_string(DecouplingKind k);

struct DecouplingReport {
  bool decoupled = false;
  DecouplingKind kind = DecouplingKind::None;
  std::optional<CVector> witness;
  std::optional<Complex> lambda;
  int dimension = 0;   // dimension of the nontrivial common eigenspace
  Real residual = 0;   // max(|W v - l v|, |K v - l v|) / |v|
  /// For a rank-one witness: distance of v/|v| to the form (w, +-i w).
  Real rank_one_defect = 0;
};

/// Common eigenvectors of W and K = J^-1 W J with equal eigenvalue, searched
/// cluster by cluster. The trivial directions (translations, c, Jc) are
/// removed unless include_trivial is set. Reports the first nontrivial hit,
/// preferring invariant planes.
DecouplingReport partial_decoupling(const WMatrix& w, const Real& tol = Real(1e-8), bool include_trivial = false);

/// True when W = diag(A, -A/2) in the (x-block, y-block) basis (to tol).
bool is_aligned_form(const CMatrix& w, const Real& tol = Real(1e-9));

struct AlignedReport {
  bool decoupled = false;
  /// Product of the eigenvalues of A other than the translation zero, i.e. the
  /// determinant of A restricted to the complement of the translations.
  Complex reduced_determinant;
  std::optional<CVector> witness;
};

/// For aligned W (else NotAligned): decoupled iff A is singular beyond the
/// translation kernel; the witness is (w, 0) with A w = 0.
AlignedReport aligned_decoupling(const CMatrix& w, const Real& tol = Real(1e-9));

/// lambda(n) = 2 - [2 sin(pi/n) / (1 - cos(pi/n))] / sum_{j=1}^{n-1} 1/sin(pi j/n).
Real equal_mass_lambda(int n);

struct EigenvectorCheck {
  Real lambda;
  Real residual_w;  // |W v - lambda v| / |v|
  Real residual_k;  // |J^-1 W J v - lambda v| / |v|
  Real residual() const { return residual_w > residual_k ? residual_w : residual_k; }
};

/// v_i = cos(4 pi (i-1)/n), v_{i+n} = sin(4 pi (i-1)/n) against W of the
/// normalized regular n-gon.
EigenvectorCheck verify_equal_mass_eigenvector(int n);

// ---------------------------------------------------------------------------
// Exact configurations

/// A configuration with coordinates and mutual distances in one real
/// quadratic field, and rational masses.
struct ExactConfiguration {
  std::vector<Rational> masses;
  std::vector<QuadraticNumber> coords;     // x-block then y-block
  std::vector<QuadraticNumber> distances;  // pair_index order, positive
};

/// Equilateral triangle of side 1 (field Q(sqrt 3)).
ExactConfiguration exact_lagrange(const std::vector<Rational>& masses);
/// Regular n-gon of circumradius 1 for n in {3, 4, 6}, equal unit masses.
ExactConfiguration exact_ngon(int n);
/// Collinear (-1, 0, rho) with rational rho > 0.
ExactConfiguration exact_collinear(const std::vector<Rational>& masses, const Rational& rho);

/// Exact multiplier and W normalized to multiplier -1: W = (-1/alpha) W_raw.
QuadraticNumber exact_multiplier(const ExactConfiguration& c);
ExactMatrix<QuadraticNumber> exact_w(const ExactConfiguration& c);

}  // namespace nbint
