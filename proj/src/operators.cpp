#include "enpp/operators.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "enpp/kernels.hpp"
#include "enpp/profiles.hpp"

namespace enpp {

namespace {

void require_min_nodes(const Field& f) {
    if (f.grid->nz() < 5 || f.grid->ntheta() < 5)
        throw std::invalid_argument("derivative operators need at least 5 nodes per direction");
}

} // namespace

Field d_z(const Field& f) {
    require_min_nodes(f);
    Field out(f.grid);
    kernels::dlogz(*f.grid, f.v.data(), out.v.data());
    return out;
}

Field partial_theta(const Field& f) {
    require_min_nodes(f);
    Field out(f.grid);
    kernels::dtheta(*f.grid, f.v.data(), out.v.data());
    return out;
}

Field d_theta(const Field& f) {
    Field out = partial_theta(f);
    const Grid& g = *f.grid;
    for (std::size_t i = 0; i < g.nz(); ++i)
        for (std::size_t j = 0; j < g.ntheta(); ++j)
            out.at(i, j) *= std::sin(2.0 * g.theta(j));
    return out;
}

RadialFunction l_k(const Field& f) {
    const Grid& g = *f.grid;
    const std::size_t nz = g.nz(), nt = g.ntheta();

    // kernel = K(theta) * Gauss weight
    std::vector<double> kt(nt);
    for (std::size_t j = 0; j < nt; ++j)
        kt[j] = k_profile(g.theta(j)) * g.theta_weight(j);

    std::vector<double> m(nz);
    kernels::theta_moment(g, f.v.data(), kt.data(), m.data());

    // Tail closure: fit m ~ A/z + B/z^2 through the last two nodes, then
    // int_{zmax}^inf m/z dz = A/zmax + B/(2 zmax^2). Decaying fields per the
    // module contract (~1/z) are captured exactly up to O(1/z^3) residuals.
    const double z1 = g.z(nz - 2), z2 = g.z(nz - 1);
    const double m1 = m[nz - 2], m2 = m[nz - 1];
    // Solve [1/z1 1/z1^2; 1/z2 1/z2^2] [A;B] = [m1;m2].
    const double a11 = 1.0 / z1, a12 = 1.0 / (z1 * z1);
    const double a21 = 1.0 / z2, a22 = 1.0 / (z2 * z2);
    const double d = a11 * a22 - a12 * a21;
    const double A = (m1 * a22 - a12 * m2) / d;
    const double B = (a11 * m2 - m1 * a21) / d;
    const double tail = A / z2 + B / (2.0 * z2 * z2);

    RadialFunction out(f.grid);
    kernels::reverse_cumulative_logz(g, m.data(), tail, out.v.data());
    return out;
}

double l_k_at_zmin(const Field& f) { return l_k(f).v[0]; }

Field op_L(const Field& f) {
    Field fz = d_z(f);
    Field out(f.grid);
    const Grid& g = *f.grid;
    for (std::size_t i = 0; i < g.nz(); ++i) {
        const double a = 1.0 - 2.0 / (1.0 + g.z(i));
        for (std::size_t j = 0; j < g.ntheta(); ++j)
            out.at(i, j) = a * f.at(i, j) + fz.at(i, j);
    }
    return out;
}

Field op_L_fstar(const Field& f, const Parameters& p) {
    Field out = op_L(f);
    RadialFunction lk = l_k(f);
    const Grid& g = *f.grid;
    for (std::size_t i = 0; i < g.nz(); ++i) {
        const double z = g.z(i);
        const double r = 2.0 * z / (p.c * (1.0 + z) * (1.0 + z)) * lk.v[i];
        for (std::size_t j = 0; j < g.ntheta(); ++j)
            out.at(i, j) -= r * gamma_profile(g.theta(j), p);
    }
    return out;
}

namespace {

// Projector direction Gamma(t) 2z^2 / (c (1+z)^3); its L_K value at the
// innermost node is the normalizer.
Field projector_shape(const GridPtr& g, const Parameters& p) {
    return sample(g, [&](double z, double t) {
        return gamma_profile(t, p) * 2.0 * z * z / (p.c * std::pow(1.0 + z, 3));
    });
}

} // namespace

Field projector_P(const Field& f, const Parameters& p) {
    Field q = projector_shape(f.grid, p);
    const double qnorm = l_k_at_zmin(q);
    const double val = l_k_at_zmin(f);
    Field out = f;
    const double s = val / qnorm;
    for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] -= s * q.v[i];
    return out;
}

Field op_L_fstar_T(const Field& f, const Parameters& p) {
    // Transport part (3/(1+z)) sin(2t) f_t, projected to the kernel of
    // L_K(.)(0).
    Field ft = partial_theta(f);
    const Grid& g = *f.grid;
    Field transport(f.grid);
    for (std::size_t i = 0; i < g.nz(); ++i) {
        const double a = 3.0 / (1.0 + g.z(i));
        for (std::size_t j = 0; j < g.ntheta(); ++j)
            transport.at(i, j) = a * std::sin(2.0 * g.theta(j)) * ft.at(i, j);
    }
    return op_L_fstar(f, p) - projector_P(transport, p);
}

Field s_delta(const Field& f, const Parameters& p) {
    Field fz = d_z(f);
    Field out = f;
    for (std::size_t i = 0; i < out.v.size(); ++i)
        out.v[i] += (1.0 + p.delta) * fz.v[i];
    return out;
}

Velocity velocity_functionals(const Field& psi, const Parameters& p) {
    Field psiz = d_z(psi);
    Field psit = partial_theta(psi);
    const Grid& g = *psi.grid;
    Velocity vel{Field(psi.grid), Field(psi.grid), Field(psi.grid)};
    for (std::size_t i = 0; i < g.nz(); ++i) {
        for (std::size_t j = 0; j < g.ntheta(); ++j) {
            const double tn = std::tan(g.theta(j));
            const double ps = psi.at(i, j), pz = psiz.at(i, j), pt = psit.at(i, j);
            vel.U.at(i, j) = -3.0 * ps - p.alpha * pz;
            vel.V.at(i, j) = pt - tn * ps;
            vel.R.at(i, j) = 2.0 * tn * ps + p.alpha * tn * pz + pt;
        }
    }
    return vel;
}

Field op_M_G(const Field& G, const Field& phi_F, const Parameters& p) {
    require_same_grid(G, phi_F);
    Velocity vel = velocity_functionals(phi_F, p);
    Field Gt = partial_theta(G);
    Field Gz = d_z(G);
    Field out = s_delta(G, p);
    for (std::size_t i = 0; i < out.v.size(); ++i)
        out.v[i] += vel.U.v[i] * Gt.v[i] + p.alpha * vel.V.v[i] * Gz.v[i];
    return out;
}

Field op_M(const Field& eps, const Field& phi_F, const Field& phi_eps,
           const Field& F, const Parameters& p) {
    require_same_grid(eps, phi_F);
    require_same_grid(eps, phi_eps);
    require_same_grid(eps, F);
    Velocity vF = velocity_functionals(phi_F, p);
    Velocity vE = velocity_functionals(phi_eps, p);
    Field et = partial_theta(eps);
    Field ez = d_z(eps);
    Field Ft = partial_theta(F);
    Field Fz = d_z(F);
    Field out = s_delta(eps, p);
    for (std::size_t i = 0; i < out.v.size(); ++i) {
        out.v[i] += vF.U.v[i] * et.v[i] + p.alpha * vF.V.v[i] * ez.v[i]
                  + vE.U.v[i] * Ft.v[i] + p.alpha * vE.V.v[i] * Fz.v[i]
                  - vF.R.v[i] * eps.v[i] - vE.R.v[i] * F.v[i];
    }
    return out;
}

NonlinearTerms nonlinear_terms(const Field& eps, const Field& G, const Field& Pi,
                               const Field& phi_eps, const Parameters& p) {
    require_same_grid(eps, G);
    require_same_grid(eps, Pi);
    require_same_grid(eps, phi_eps);
    Velocity vE = velocity_functionals(phi_eps, p);
    Field et = partial_theta(eps);
    Field ez = d_z(eps);
    Field Gt = partial_theta(G);
    Field Gz = d_z(G);
    Field Pt = partial_theta(Pi);
    Field Pz = d_z(Pi);

    NonlinearTerms n{Field(eps.grid), Field(eps.grid), Field(eps.grid)};
    for (std::size_t i = 0; i < eps.v.size(); ++i) {
        n.N1.v[i] = -vE.U.v[i] * et.v[i] - p.alpha * vE.V.v[i] * ez.v[i]
                    + vE.R.v[i] * eps.v[i];
        n.N2.v[i] = p.alpha * Pz.v[i] * Gt.v[i] - p.alpha * Gz.v[i] * Pt.v[i]
                    + 2.0 * Gt.v[i] * Pi.v[i];
        n.N3.v[i] = -vE.U.v[i] * Gt.v[i] - p.alpha * vE.V.v[i] * Gz.v[i];
    }
    return n;
}

Field error_term(const Field& F, double lambda_rate, double mu_rate,
                 const Parameters& p) {
    Field Fz = d_z(F);
    Field out = s_delta(F, p);
    const double a = 1.0 + lambda_rate;
    for (std::size_t i = 0; i < out.v.size(); ++i)
        out.v[i] = a * out.v[i] - mu_rate * Fz.v[i];
    return out;
}

} // namespace enpp
