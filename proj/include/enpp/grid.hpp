#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace enpp {

// Tensor-product quadrature grid on [z_min, z_max] x (0, pi/2).
//
// z nodes are geometric (equispaced in log z), which resolves both the
// z ~ 1 transition of the steady profile and the large-z tail. theta nodes
// are Gauss-Legendre, strictly interior to (0, pi/2) so that the singular
// angular weights sin(2t)^{-eta}, sin(2t)^{-gamma} are never evaluated at
// their endpoint zeros.
//
// The grid also carries precomputed 5-point finite-difference stencils:
// 4th order in log z (uniform spacing) and 4th order in theta (non-uniform
// Gauss nodes, Fornberg weights), with one-sided stencils at the edges.
class Grid {
public:
    Grid(double z_min, double z_max, std::size_t nz, std::size_t ntheta);

    std::size_t nz() const { return z_.size(); }
    std::size_t ntheta() const { return theta_.size(); }
    std::size_t size() const { return nz() * ntheta(); }
    std::size_t index(std::size_t iz, std::size_t it) const { return iz * ntheta() + it; }

    double z(std::size_t i) const { return z_[i]; }
    double theta(std::size_t j) const { return theta_[j]; }
    double z_weight(std::size_t i) const { return wz_[i]; }          // integrates dz
    double theta_weight(std::size_t j) const { return wtheta_[j]; }  // integrates dtheta
    double dlog() const { return dlog_; }                            // log-z spacing

    const std::vector<double>& z_nodes() const { return z_; }
    const std::vector<double>& theta_nodes() const { return theta_; }
    const std::vector<double>& z_weights() const { return wz_; }
    const std::vector<double>& theta_weights() const { return wtheta_; }

    // Stencil row j of the derivative tables: 5 weights applied to values at
    // [base, base+5). d/dtheta acts on the true angular coordinate;
    // d/dlog z acts on t = log z (so it realizes z d/dz directly).
    struct StencilRow {
        std::size_t base;
        double w[5];
    };
    const StencilRow& theta_stencil(std::size_t j) const { return st_theta_[j]; }
    const StencilRow& logz_stencil(std::size_t i) const { return st_logz_[i]; }

private:
    std::vector<double> z_, theta_, wz_, wtheta_;
    std::vector<StencilRow> st_theta_, st_logz_;
    double dlog_ = 0.0;
};

using GridPtr = std::shared_ptr<const Grid>;

// Validates bounds (0 < z_min < 1 < z_max, nz >= 8, ntheta >= 8) and builds
// the shared grid.
GridPtr make_grid(double z_min, double z_max, std::size_t nz, std::size_t ntheta);

// Gauss-Legendre nodes/weights on [a, b], Newton iteration on P_n.
void gauss_legendre(std::size_t n, double a, double b,
                    std::vector<double>& nodes, std::vector<double>& weights);

// Finite-difference weights for the m-th derivative at x0 from the point set
// xs (Fornberg's recursion).
void fd_weights(double x0, const double* xs, std::size_t n, int m, double* w);

} // namespace enpp
