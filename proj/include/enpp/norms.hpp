#pragma once

#include <string>
#include <vector>

#include "enpp/field.hpp"
#include "enpp/params.hpp"

namespace enpp {

// Per-term contributions of the weighted Sobolev sum
//   |f|_{H^k}^2 = sum_{i<=k} |D_z^i f  w / sin(2t)^{eta/2}|^2
//              + sum_{i+j<=k, i>=1} |D_z^j D_t^i f  w / sin(2t)^{gamma/2}|^2
// (flat dz dtheta measure). terms holds the squared contributions,
// total_sq their sum, norm() the square root.
struct NormBreakdown {
    std::vector<std::pair<std::string, double>> terms;
    double total_sq = 0.0;
    double norm() const;
};

// (f, g) under weight w^2 sin(2t)^{-weight_exponent}, flat measure.
double weighted_l2(const Field& f, const Field& g, double weight_exponent);

// Weighted Sobolev norm of order p.k. Throws if any contribution is
// non-finite, naming the offending term.
NormBreakdown h_k_norm(const Field& f, const Parameters& p);
NormBreakdown h_k_norm(const RadialFunction& f, const Parameters& p);

// Plain L2 over dz dtheta (residual reporting).
double flat_l2(const Field& f);
double flat_l2(const RadialFunction& f);

// Energy of the perturbation pair:
//   E = |eps|_{H^k}^2 + |G|_{H^k}^2 / C_G^2,
// where C_G is the H^k norm of the forward image of the unit-amplitude
// special solution, so a pure special-solution state of amplitude a has
// energy exactly a^2.
double energy(const Field& eps, const Field& G, const Parameters& p);

// The normalizer C_G^2 itself (computed once per grid by callers that log
// energies repeatedly).
double energy_g_normalizer(const GridPtr& g, const Parameters& p);
double energy_with_normalizer(const Field& eps, const Field& G, const Parameters& p,
                              double g_normalizer_sq);

} // namespace enpp
