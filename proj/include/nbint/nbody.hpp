#pragma once

// Planar n-body potential V = sum_{i<j} m_i m_j / r_ij on complexified
// configurations, Darboux points (central configurations) and their
// normalization to multiplier -1.
//
// Coordinates are stored as (x_1..x_n, y_1..y_n). The equations of motion are
// q'' = +grad V / m, so real central configurations have negative multipliers.

#include "nbint/multivariate.hpp"
#include "nbint/numeric.hpp"
#include "nbint/polynomial.hpp"
#include "nbint/rational.hpp"

#include <optional>
#include <vector>

namespace nbint {

struct MassVector {
  std::vector<Real> values;
  std::optional<std::vector<Rational>> exact;

  /// Validates (n >= 2, all positive). Does not rescale.
  static MassVector from_rationals(const std::vector<Rational>& m);
  static MassVector from_reals(const std::vector<Real>& m);
  static MassVector equal(int n, const Rational& each = 1);

  int size() const { return static_cast<int>(values.size()); }
  Real total() const;
  /// Rescaled so that the masses sum to 1.
  MassVector normalized() const;
  /// Masses reordered: result[k] = this[order[k]].
  MassVector permuted(const std::vector<int>& order) const;
};

/// Index of the unordered pair {i, j}, i != j, in lexicographic order.
int pair_index(int i, int j, int n);

class PlanarConfiguration {
 public:
  PlanarConfiguration() = default;
  explicit PlanarConfiguration(CVector coords);
  /// Branch signs per pair: r_ij = sign * principal sqrt(dx^2 + dy^2).
  PlanarConfiguration(CVector coords, std::vector<int> branches);
  /// Chooses the branch signs so that every r_ij is the one closest to the
  /// given target (pair order as pair_index).
  static PlanarConfiguration with_distances(CVector coords, const std::vector<Complex>& targets);

  int n() const { return static_cast<int>(coords_.size() / 2); }
  const CVector& coords() const { return coords_; }
  Complex x(int i) const { return coords_(i); }
  Complex y(int i) const { return coords_(n() + i); }
  const std::vector<int>& branches() const { return branches_; }
  /// Complexified distance r_ij with the recorded branch.
  Complex distance(int i, int j) const;
  std::vector<Complex> distances() const;

  /// s * c, with branches updated so that r_ij(s c) = s r_ij(c).
  PlanarConfiguration scaled(const Complex& s) const;
  /// Block rotation R_theta applied to the coordinates.
  PlanarConfiguration rotated(const Real& theta) const;
  /// Complex conjugate configuration, distances conjugated as well.
  PlanarConfiguration conjugated() const;
  /// Translated so that the mass-weighted centre is at the origin.
  PlanarConfiguration centered(const MassVector& m) const;

  bool is_real(const Real& tol = Real(1e-25)) const;

 private:
  CVector coords_;
  std::vector<int> branches_;
};

Complex potential_value(const MassVector& m, const PlanarConfiguration& q);
/// dV/dq (2n entries).
CVector potential_gradient(const MassVector& m, const PlanarConfiguration& q);
/// a_i = (1/m_i) dV/dq_i.
CVector mass_scaled_acceleration(const MassVector& m, const PlanarConfiguration& q);
/// Hessian of V (2n x 2n).
CMatrix potential_hessian(const MassVector& m, const PlanarConfiguration& q);
/// (1/m_i) d^2V/dq_i dq_j at q, without any multiplier normalization. This is
/// also the Jacobian of the acceleration.
CMatrix mass_scaled_hessian(const MassVector& m, const PlanarConfiguration& q);

struct DarbouxPoint {
  PlanarConfiguration config;
  Complex multiplier;
  Real residual = 0;  // max_i |a_i - multiplier * c_i|
  Real tolerance = Real(1e-12);
  bool valid() const { return residual <= tolerance; }
};

/// Least-squares multiplier and residual of an arbitrary configuration.
DarbouxPoint make_darboux(const MassVector& m, const PlanarConfiguration& q);

/// Rescales by s = principal cbrt(-alpha) so the multiplier becomes -1.
/// Throws DegenerateDarboux when alpha = 0.
DarbouxPoint normalize_multiplier(const MassVector& m, const DarbouxPoint& d);

/// Regular n-gon, equal masses, normalized.
DarbouxPoint regular_ngon(int n, const Real& mass = Real(1));

/// Equilateral triangle with real side lengths, normalized.
DarbouxPoint lagrange_equilateral(const MassVector& m);

/// Triangle with complex mutual distances r12, r13, r23 (each cube equal),
/// placed with body 1 at the origin and body 2 on the x-axis; normalized.
DarbouxPoint lagrange_complex(const MassVector& m, const Complex& r12, const Complex& r13, const Complex& r23);

/// Euler quintic L(rho) for bodies at (-1, 0, rho), with coefficients in the
/// masses. complex_order selects the second Darboux equation, whose signed
/// distances are r12 = q1 - q2, r13 = q3 - q1, r23 = q2 - q3.
Polynomial<MPoly> euler_quintic(bool complex_order = false);

/// Collinear configuration (-1, 0, rho) with the matching distance branches,
/// centred and normalized.
DarbouxPoint collinear_point(const MassVector& m, const Complex& rho, bool complex_order = false);

struct EulerResult {
  Polynomial<MPoly> quintic;
  std::vector<Complex> roots;  // roots of L at the given masses, rho != 0, -1
  std::vector<DarbouxPoint> points;
  /// Isolating intervals of the real roots, when the masses are exact.
  int real_root_count = 0;
};
EulerResult euler_collinear(const MassVector& m, bool complex_order = false);

struct NewtonResult {
  DarbouxPoint point;
  int iterations = 0;
};

struct NewtonOptions {
  int max_iterations = 50;
  Real tolerance = Real(1e-12);
};

/// Newton iteration on a(c) + c = 0. The guess is first rescaled to
/// multiplier -1; the rotation gauge is fixed by pinning the coordinate that
/// moves fastest under rotation. Translations need no gauge: they are not in
/// the kernel of the Jacobian at a Darboux point.
NewtonResult newton_refine(const MassVector& m, const PlanarConfiguration& guess, const NewtonOptions& opts = {});

/// n-body Hamiltonian H = sum |p_i|^2 / (2 m_i) - V and angular momentum
/// C = sum (x_i p_yi - y_i p_xi), for real phase-space points.
Real hamiltonian(const MassVector& m, const RVector& q, const RVector& p);
Real angular_momentum(const RVector& q, const RVector& p);

}  // namespace nbint
