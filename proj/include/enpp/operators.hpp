#pragma once

#include <string>

#include "enpp/field.hpp"
#include "enpp/params.hpp"

namespace enpp {

// Residual record used by the two-grid verification helpers.
struct OperatorReport {
    std::string name;
    double residual_norm = 0.0;
    double convergence_order = 0.0;
};

// ---- differential operators -------------------------------------------

// D_theta(f) = sin(2t) df/dt  and  D_z(f) = z df/dz, both 4th order.
// d_z works in log z, so it realizes z d/dz exactly on the geometric grid.
Field d_theta(const Field& f);
Field d_z(const Field& f);

// Raw angular derivative df/dtheta (no sin factor).
Field partial_theta(const Field& f);

// ---- nonlocal operator --------------------------------------------------

// L_K(f)(z) = int_z^inf int_0^{pi/2} f(z', t) K(t) / z' dt dz'.
// The theta integral is Gauss quadrature against K; the radial integral is
// a reverse cumulative 4-point rule in log z. The tail beyond z_max is
// closed by fitting m(z) ~ A/z + B/z^2 through the last two nodes and
// integrating the fit exactly; fields with compact support get a zero tail.
RadialFunction l_k(const Field& f);

// Value of L_K(f) at the innermost node (stands in for z = 0).
double l_k_at_zmin(const Field& f);

// ---- linearized operators ----------------------------------------------

// L(f)      = f + z f_z - 2 f/(1+z)
// L_F*(f)   = L(f) - (2 z Gamma / (c (1+z)^2)) L_K(f)
// P(f)      = f - q * L_K(f)(0) / L_K(q)(0),  q = Gamma 2z^2 / (c (1+z)^3)
// L_F*^T(f) = L_F*(f) - P( (3/(1+z)) sin(2t) f_t )
// The projector is normalized on the grid so L_K(P(f)) vanishes exactly at
// the innermost node.
Field op_L(const Field& f);
Field op_L_fstar(const Field& f, const Parameters& p);
Field projector_P(const Field& f, const Parameters& p);
Field op_L_fstar_T(const Field& f, const Parameters& p);

// S_delta(f) = f + (1+delta) z f_z.
Field s_delta(const Field& f, const Parameters& p);

// ---- velocity functionals ----------------------------------------------

// U(Psi) = -3 Psi - alpha z Psi_z
// V(Psi) = Psi_t - tan(t) Psi
// R(Psi) = 2 tan(t) Psi + alpha tan(t) z Psi_z + Psi_t
struct Velocity {
    Field U, V, R;
};
Velocity velocity_functionals(const Field& psi, const Parameters& p);

// ---- linearized transport operators -------------------------------------

// M_G(G) = S_delta(G) + U(Phi_F) G_t + V(Phi_F) alpha z G_z.
Field op_M_G(const Field& G, const Field& phi_F, const Parameters& p);

// M(eps) = S_delta(eps) + U(Phi_F) eps_t + V(Phi_F) alpha z eps_z
//        + U(Phi_eps) F_t + V(Phi_eps) alpha z F_z
//        - R(Phi_F) eps - R(Phi_eps) F.
Field op_M(const Field& eps, const Field& phi_F, const Field& phi_eps,
           const Field& F, const Parameters& p);

// ---- nonlinear and error terms ------------------------------------------

// N1(eps)    = -U(Phi_e) eps_t - alpha V(Phi_e) z eps_z + R(Phi_e) eps
// N2(Pi, G)  = alpha z Pi_z G_t - alpha z G_z Pi_t + 2 G_t Pi
// N3(eps, G) = -U(Phi_e) G_t - V(Phi_e) alpha z G_z
struct NonlinearTerms {
    Field N1, N2, N3;
};
NonlinearTerms nonlinear_terms(const Field& eps, const Field& G, const Field& Pi,
                               const Field& phi_eps, const Parameters& p);

// E = -(mu_s/mu) z F_z + (1 + lambda_s/lambda) S_delta(F).
Field error_term(const Field& F, double lambda_rate, double mu_rate,
                 const Parameters& p);

} // namespace enpp
