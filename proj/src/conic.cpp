#include "nbint/conic.hpp"

#include "nbint/errors.hpp"

#include <boost/numeric/odeint.hpp>

#include <array>
#include <cmath>

namespace nbint {

ConicOrbitParams conic_params(std::complex<double> C, std::complex<double> H) {
  return {C, H, C * C, std::sqrt(1.0 + 2.0 * H * C * C)};
}

std::vector<RadialSample> integrate_radial(double C, double H, double phi0, int direction, double t_end,
                                           double tol, int samples) {
  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, 2>;
  if (phi0 <= 0) throw InputError("phi0 must be positive");
  const double kinetic = 2 * (H + 1 / phi0 - C * C / (2 * phi0 * phi0));
  if (kinetic < -1e-14) throw InputError("energy below the effective potential at phi0");
  State s{phi0, (direction < 0 ? -1.0 : 1.0) * std::sqrt(std::max(0.0, kinetic))};
  const double c2 = C * C;
  auto rhs = [c2](const State& x, State& dx, double) {
    if (x[0] <= 0) throw SingularConfiguration("radial trajectory reached the origin");
    dx[0] = x[1];
    dx[1] = c2 / (x[0] * x[0] * x[0]) - 1 / (x[0] * x[0]);
  };
  auto stepper = odeint::make_dense_output(tol, tol, odeint::runge_kutta_dopri5<State>());
  std::vector<RadialSample> out;
  std::vector<double> times;
  for (int k = 0; k <= samples; ++k) times.push_back(t_end * k / samples);
  odeint::integrate_times(stepper, rhs, s, times.begin(), times.end(), t_end / samples / 10,
                          [&](const State& x, double t) {
                            if (!(x[0] > 0)) throw SingularConfiguration("radial trajectory reached the origin");
                            out.push_back({t, x[0], x[1]});
                          });
  return out;
}

double conic_energy_residual(double C, double H, const std::vector<RadialSample>& samples) {
  double worst = 0;
  for (const RadialSample& s : samples) {
    if (!(s.phi > 0)) throw SingularConfiguration("radial trajectory reached the origin");
    const double e = 0.5 * s.phidot * s.phidot + C * C / (2 * s.phi * s.phi) - 1 / s.phi;
    worst = std::max(worst, std::abs(e - H));
  }
  return worst;
}

}  // namespace nbint
