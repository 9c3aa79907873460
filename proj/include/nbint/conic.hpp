#pragma once

// Radial motion on the conic orbit through a multiplier -1 Darboux point:
// phi'' = C^2/phi^3 - 1/phi^2, with first integral
// phi'^2/2 + C^2/(2 phi^2) - 1/phi = H.

#include <complex>
#include <vector>

namespace nbint {

struct ConicOrbitParams {
  std::complex<double> C, H;
  std::complex<double> p;  // semi-latus rectum C^2
  std::complex<double> e;  // eccentricity sqrt(1 + 2 H C^2)
};

ConicOrbitParams conic_params(std::complex<double> C, std::complex<double> H);

struct RadialSample {
  double t, phi, phidot;
};

/// Integrates the radial equation from phi(0) = phi0 with phi'(0) of the given
/// sign fixed by the energy relation. Throws SingularConfiguration if phi
/// reaches 0, InputError if the initial energy is inconsistent.
std::vector<RadialSample> integrate_radial(double C, double H, double phi0, int direction, double t_end,
                                           double tol, int samples = 200);

/// max |phi'^2/2 + C^2/(2 phi^2) - 1/phi - H| over the samples.
double conic_energy_residual(double C, double H, const std::vector<RadialSample>& samples);

}  // namespace nbint
