#include "enpp/norms.hpp"

#include <cmath>
#include <stdexcept>

#include "enpp/elliptic.hpp"
#include "enpp/kernels.hpp"
#include "enpp/operators.hpp"
#include "enpp/profiles.hpp"

namespace enpp {

double NormBreakdown::norm() const { return std::sqrt(total_sq); }

namespace {

// Precomputed separable factors: z part carries quadrature weight * w(z)^2,
// theta part carries quadrature weight * sin(2t)^{-e}.
void weight_factors(const Grid& g, double e, std::vector<double>& zf,
                    std::vector<double>& tf) {
    zf.resize(g.nz());
    tf.resize(g.ntheta());
    for (std::size_t i = 0; i < g.nz(); ++i) {
        double w = weight_w(g.z(i));
        zf[i] = g.z_weight(i) * w * w;
    }
    for (std::size_t j = 0; j < g.ntheta(); ++j)
        tf[j] = g.theta_weight(j) * std::pow(std::sin(2.0 * g.theta(j)), -e);
}

} // namespace

double weighted_l2(const Field& f, const Field& g, double e) {
    require_same_grid(f, g);
    std::vector<double> zf, tf;
    weight_factors(*f.grid, e, zf, tf);
    return kernels::quad_sum(*f.grid, f.v.data(), g.v.data(), zf.data(), tf.data());
}

double flat_l2(const Field& f) {
    std::vector<double> zf(f.grid->z_weights()), tf(f.grid->theta_weights());
    double s = kernels::quad_sum(*f.grid, f.v.data(), f.v.data(), zf.data(), tf.data());
    return std::sqrt(s);
}

double flat_l2(const RadialFunction& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.grid->nz(); ++i)
        s += f.grid->z_weight(i) * f.v[i] * f.v[i];
    return std::sqrt(s);
}

NormBreakdown h_k_norm(const Field& f, const Parameters& p) {
    NormBreakdown nb;
    auto add = [&](const std::string& name, const Field& g, double e) {
        double val = weighted_l2(g, g, e);
        if (!std::isfinite(val))
            throw std::runtime_error("h_k_norm: non-finite contribution in term " + name);
        nb.terms.emplace_back(name, val);
        nb.total_sq += val;
    };

    // Radial family D_z^i f with eta weight.
    Field dzf = f;
    for (int i = 0; i <= p.k; ++i) {
        add("Dz^" + std::to_string(i) + " (eta)", dzf, p.eta);
        if (i < p.k) dzf = d_z(dzf);
    }
    // Mixed family D_z^j D_t^i f, i >= 1, with gamma weight.
    Field dti = f;
    for (int i = 1; i <= p.k; ++i) {
        dti = d_theta(dti);
        Field dmix = dti;
        for (int j = 0; i + j <= p.k; ++j) {
            add("Dz^" + std::to_string(j) + " Dt^" + std::to_string(i) + " (gamma)",
                dmix, p.gamma);
            if (i + j < p.k) dmix = d_z(dmix);
        }
    }
    return nb;
}

NormBreakdown h_k_norm(const RadialFunction& f, const Parameters& p) {
    return h_k_norm(broadcast(f), p);
}

double energy_g_normalizer(const GridPtr& g, const Parameters& p) {
    SpecialPi unit;
    Field pi1 = special_pi(unit, g, p);
    Field g1 = apply_potential_operator(pi1, p);
    return h_k_norm(g1, p).total_sq;
}

double energy_with_normalizer(const Field& eps, const Field& G, const Parameters& p,
                              double g_normalizer_sq) {
    return h_k_norm(eps, p).total_sq + h_k_norm(G, p).total_sq / g_normalizer_sq;
}

double energy(const Field& eps, const Field& G, const Parameters& p) {
    return energy_with_normalizer(eps, G, p, energy_g_normalizer(eps.grid, p));
}

} // namespace enpp
