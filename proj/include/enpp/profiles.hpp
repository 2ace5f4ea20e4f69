#pragma once

#include "enpp/field.hpp"
#include "enpp/params.hpp"

namespace enpp {

// Angular profiles, weight, cutoff, approximate steady state and the
// explicit special solution of the electrostatic operator.

// Gamma(theta) = (sin t cos^2 t)^(alpha/3), defined strictly inside
// (0, pi/2); endpoint inputs are rejected (fractional-power zero).
double gamma_profile(double theta, const Parameters& p);

// K(theta) = 3 sin t cos^2 t (>= 0 on [0, pi/2], integrates to 1).
double k_profile(double theta);

// w(z) = (1+z)^2 / z^2, z > 0.
double weight_w(double z);

// Steady vorticity profile, alpha-scaled form used by the dynamics:
//   F*(z, t) = (Gamma/c) * 4 alpha z / (1+z)^2.
double f_star(double z, double theta, const Parameters& p);
Field f_star_field(const GridPtr& g, const Parameters& p);

// Unscaled variant (no alpha factor); only the nonlocal-identity tests use
// this normalization.
double f_star_base(double z, double theta, const Parameters& p);

// C^2 cutoff: 0 for z <= 1/2, 1 for z >= 1, quintic smoothstep between.
double cutoff_chi(double z);
double cutoff_chi_dz(double z);
double cutoff_chi_dzz(double z);

// Angular factor of the special solution: Pi_2 = cos^2 t - 2/3 (Neumann
// eigenfunction of the angular operator), and the radial factor z^beta.
double pi_angular(double theta);
double pi_radial(double z, const Parameters& p);

// The cut special solution Pi = amplitude * chi(z) * c1 * z^beta * Pi_2.
struct SpecialPi {
    double amplitude = 1.0;
    double c1 = 1.0;
};

Field special_pi(const SpecialPi& sp, const GridPtr& g, const Parameters& p);

} // namespace enpp
