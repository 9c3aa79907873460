#pragma once

// Rotation-invariant example potentials in dimension 3 and numerical checks of
// their first integrals. Derivatives are exact (forward-mode automatic
// differentiation), evaluated in double precision.

#include <array>
#include <string>
#include <vector>

namespace nbint {

enum class Dim3Potential { V1, V2, FamilyA, FamilyB };

std::string to_string(Dim3Potential p);

struct IntegralCheck {
  std::string name;
  std::string level;  // level set on which {H, I} = 0 is tested ("C=0", "H=0", "all")
  double max_bracket = 0;
};

struct Dim3Result {
  Dim3Potential which;
  std::array<double, 3> darboux{1, 0, 0};
  double multiplier = 0;
  std::array<double, 3> hessian_diagonal{};
  double max_offdiagonal = 0;
  double lambda = 0;  // d^2V/dz^2 at the Darboux point: the normal eigenvalue
  std::vector<IntegralCheck> integrals;
};

/// Evaluates the Hessian at (1,0,0) and the bracket {H, I} of each known first
/// integral at `samples` random phase-space points on the appropriate level
/// set, with H = |p|^2/2 - V.
Dim3Result dim3_example(Dim3Potential which, unsigned seed = 1, int samples = 100);

}  // namespace nbint
