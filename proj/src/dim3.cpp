#include "nbint/dim3.hpp"

#include <Eigen/Core>
#include <unsupported/Eigen/AutoDiff>

#include <cmath>
#include <random>

namespace nbint {

namespace {

template <class T>
T potential(Dim3Potential which, const T& x, const T& y, const T& z) {
  using std::sqrt;
  const T rho2 = x * x + y * y;
  switch (which) {
    case Dim3Potential::V1:
      return sqrt(rho2) / (rho2 - z * z);
    case Dim3Potential::V2:
      return (rho2 + z * z) / (rho2 * sqrt(rho2));
    case Dim3Potential::FamilyA:
      return T(1.0) / sqrt(rho2 + z * z);
    case Dim3Potential::FamilyB:
      break;
  }
  return T(1.0) / sqrt(rho2);
}

using Grad6 = Eigen::AutoDiffScalar<Eigen::Matrix<double, 6, 1>>;

// Phase-space point ordered (x, y, z, px, py, pz).
using Phase = std::array<double, 6>;

std::array<Grad6, 6> seed(const Phase& u) {
  std::array<Grad6, 6> v;
  for (int k = 0; k < 6; ++k) v[k] = Grad6(u[k], 6, k);
  return v;
}

Grad6 energy(Dim3Potential which, const std::array<Grad6, 6>& v) {
  return 0.5 * (v[3] * v[3] + v[4] * v[4] + v[5] * v[5]) - potential(which, v[0], v[1], v[2]);
}

enum class Integral { I1, I2, Rotation, Translation };

Grad6 integral(Integral which, const std::array<Grad6, 6>& v) {
  using std::sqrt;
  const Grad6 &x = v[0], &y = v[1], &z = v[2], &px = v[3], &py = v[4], &pz = v[5];
  const Grad6 rho2 = x * x + y * y;
  const Grad6 s = x * px + y * py;
  switch (which) {
    case Integral::I1:
      return s * pz / sqrt(rho2) + z / (rho2 - z * z);
    case Integral::I2: {
      const Grad6 w = rho2 - z * z;
      return w * w * pz * pz - 4.0 * z * w * pz * s + 4.0 * z * z * s * s;
    }
    case Integral::Rotation:
      return pz * x - px * z;
    case Integral::Translation:
      break;
  }
  return pz;
}

double bracket(Dim3Potential pot, Integral which, const Phase& u) {
  const auto v = seed(u);
  const auto dh = energy(pot, v).derivatives();
  const auto di = integral(which, v).derivatives();
  double b = 0;
  for (int k = 0; k < 3; ++k) b += dh(k) * di(k + 3) - dh(k + 3) * di(k);
  return b;
}

// Random phase-space point away from the poles of all four potentials.
struct Sampler {
  std::mt19937_64 rng;
  std::uniform_real_distribution<double> pos{-2.0, 2.0}, mom{-1.0, 1.0};

  std::array<double, 3> position() {
    for (;;) {
      const double x = pos(rng), y = pos(rng), z = pos(rng);
      const double rho2 = x * x + y * y;
      if (rho2 >= 0.25 && std::abs(rho2 - z * z) >= 0.25) return {x, y, z};
    }
  }
};

}  // namespace

std::string to_string(Dim3Potential p) {
  switch (p) {
    case Dim3Potential::V1:
      return "V1";
    case Dim3Potential::V2:
      return "V2";
    case Dim3Potential::FamilyA:
      return "a/sqrt(x^2+y^2+z^2)";
    case Dim3Potential::FamilyB:
      break;
  }
  return "b/sqrt(x^2+y^2)";
}

Dim3Result dim3_example(Dim3Potential which, unsigned seed_value, int samples) {
  Dim3Result out;
  out.which = which;

  // Hessian by nested forward mode.
  using Inner = Eigen::AutoDiffScalar<Eigen::Vector3d>;
  using Outer = Eigen::AutoDiffScalar<Eigen::Matrix<Inner, 3, 1>>;
  std::array<Outer, 3> c;
  for (int k = 0; k < 3; ++k) {
    c[k] = Outer(Inner(out.darboux[k], 3, k), 3, k);
    for (int j = 0; j < 3; ++j) c[k].derivatives()(j) = Inner(j == k ? 1.0 : 0.0, Eigen::Vector3d::Zero());
  }
  const Outer v = potential(which, c[0], c[1], c[2]);
  out.multiplier = v.derivatives()(0).value() / out.darboux[0];
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) {
      const double h = v.derivatives()(j).derivatives()(k);
      if (j == k) out.hessian_diagonal[j] = h;
      else out.max_offdiagonal = std::max(out.max_offdiagonal, std::abs(h));
    }
  out.lambda = out.hessian_diagonal[2];

  Sampler s{std::mt19937_64(seed_value)};
  auto run = [&](Integral kind, const char* name, const char* level) {
    IntegralCheck check{name, level, 0};
    for (int n = 0; n < samples;) {
      const auto q = s.position();
      Phase u{q[0], q[1], q[2], s.mom(s.rng), s.mom(s.rng), s.mom(s.rng)};
      if (std::string(level) == "C=0") {
        // x py - y px = 0
        if (std::abs(u[0]) > std::abs(u[1])) u[4] = u[1] * u[3] / u[0];
        else u[3] = u[0] * u[4] / u[1];
      } else if (std::string(level) == "H=0") {
        u[3] *= 0.3;
        u[4] *= 0.3;
        const double pz2 = 2 * potential(which, u[0], u[1], u[2]) - u[3] * u[3] - u[4] * u[4];
        if (pz2 <= 0) continue;
        u[5] = (s.mom(s.rng) < 0 ? -1 : 1) * std::sqrt(pz2);
      }
      check.max_bracket = std::max(check.max_bracket, std::abs(bracket(which, kind, u)));
      ++n;
    }
    out.integrals.push_back(check);
  };

  switch (which) {
    case Dim3Potential::V1:
      run(Integral::I1, "I1 = (x px + y py) pz / sqrt(x^2+y^2) + z/(x^2+y^2-z^2)", "C=0");
      break;
    case Dim3Potential::V2:
      run(Integral::I2, "I2 = (x^2+y^2-z^2)^2 pz^2 - 4z(x^2+y^2-z^2) pz (x px + y py) + 4z^2 (x px + y py)^2",
          "H=0");
      break;
    case Dim3Potential::FamilyA:
      run(Integral::Rotation, "pz x - px z", "all");
      break;
    case Dim3Potential::FamilyB:
      run(Integral::Translation, "pz", "all");
      break;
  }
  return out;
}

}  // namespace nbint
