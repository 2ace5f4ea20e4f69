#include "enpp/profiles.hpp"

#include <cmath>
#include <stdexcept>

namespace enpp {

namespace {
const double kHalfPi = 2.0 * std::atan(1.0);
}

double gamma_profile(double theta, const Parameters& p) {
    if (!(theta > 0.0) || !(theta < kHalfPi))
        throw std::invalid_argument("gamma_profile: theta must lie strictly inside (0, pi/2)");
    double s = std::sin(theta), c = std::cos(theta);
    return std::pow(s * c * c, p.alpha / 3.0);
}

double k_profile(double theta) {
    if (theta < 0.0 || theta > kHalfPi)
        throw std::invalid_argument("k_profile: theta outside [0, pi/2]");
    double s = std::sin(theta), c = std::cos(theta);
    return 3.0 * s * c * c;
}

double weight_w(double z) {
    if (!(z > 0.0)) throw std::invalid_argument("weight_w: z must be positive");
    double r = (1.0 + z) / z;
    return r * r;
}

double f_star(double z, double theta, const Parameters& p) {
    return p.alpha * f_star_base(z, theta, p);
}

double f_star_base(double z, double theta, const Parameters& p) {
    return gamma_profile(theta, p) / p.c * 4.0 * z / ((1.0 + z) * (1.0 + z));
}

Field f_star_field(const GridPtr& g, const Parameters& p) {
    return sample(g, [&](double z, double t) { return f_star(z, t, p); });
}

double cutoff_chi(double z) {
    if (z <= 0.5) return 0.0;
    if (z >= 1.0) return 1.0;
    double s = 2.0 * z - 1.0;
    return s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
}

double cutoff_chi_dz(double z) {
    if (z <= 0.5 || z >= 1.0) return 0.0;
    double s = 2.0 * z - 1.0;
    return 2.0 * 30.0 * s * s * (1.0 - s) * (1.0 - s);
}

double cutoff_chi_dzz(double z) {
    if (z <= 0.5 || z >= 1.0) return 0.0;
    double s = 2.0 * z - 1.0;
    return 4.0 * 60.0 * s * (1.0 - s) * (1.0 - 2.0 * s);
}

double pi_angular(double theta) {
    double c = std::cos(theta);
    return c * c - 2.0 / 3.0;
}

double pi_radial(double z, const Parameters& p) {
    return std::pow(z, p.beta);
}

Field special_pi(const SpecialPi& sp, const GridPtr& g, const Parameters& p) {
    Field f(g);
    for (std::size_t i = 0; i < g->nz(); ++i) {
        double z = g->z(i);
        double chi = cutoff_chi(z);
        // The uncut radial factor z^beta grows fast toward z = 0; skip it
        // entirely where the cutoff vanishes.
        double radial = (chi == 0.0) ? 0.0 : sp.amplitude * sp.c1 * chi * pi_radial(z, p);
        for (std::size_t j = 0; j < g->ntheta(); ++j)
            f.at(i, j) = radial * pi_angular(g->theta(j));
    }
    return f;
}

} // namespace enpp
