#pragma once

#include <memory>

#include "enpp/field.hpp"
#include "enpp/params.hpp"

namespace enpp {

// The two variant spherical Laplacians, discretized with second-order
// centered differences on the log-z x theta tensor grid.
//
//   stream:    -a^2 z^2 Psi_zz - a(5+a) z Psi_z - Psi_tt + (tan t Psi)_t - 6 Psi = F
//              Psi = 0 at theta ends and at z_max; d(Psi)/d(log z) = 0 at z_min
//   potential:  a^2 z^2 Pi_zz + a(5+a) z Pi_z + Pi_tt - tan t Pi_t + 6 Pi = G
//              Pi_t = 0 at theta ends; Pi = 0 at z_min and z_max
//
// The stream problem assembles the full 2D system (sparse LU, cached); it
// uses a zero log-z slope at the inner edge instead of a Dirichlet row: its
// radial part degenerates to first-order transport as alpha -> 0 and a
// Dirichlet mismatch there excites a slowly damped odd-even mode that
// pollutes the small-alpha solves; zero slope matches the constant inner
// behavior of the dominant angular mode. Its solve/apply pair inverts
// exactly.
//
// The potential problem is solved in the eigenbasis of its angular operator
// with one banded radial solve per mode; the outer boundary closure is
// chosen per mode from the radial characteristic roots (see elliptic.cpp).
// Its apply() is the plain finite-difference forward map on the caller's
// grid, consistent to discretization order.
enum class EllipticKind { stream, potential };

class EllipticSolver {
public:
    EllipticSolver(GridPtr grid, const Parameters& p, EllipticKind kind);
    ~EllipticSolver();
    EllipticSolver(EllipticSolver&&) noexcept;
    EllipticSolver& operator=(EllipticSolver&&) noexcept;

    // Solves the discrete system; throws with the residual value if the
    // factorization fails or the residual exceeds 1e-8 * |rhs|.
    Field solve(const Field& rhs) const;

    // Applies the assembled discrete operator (forward map).
    Field apply(const Field& f) const;

    GridPtr grid() const;
    EllipticKind kind() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// One-shot conveniences (factorize, solve, discard).
Field solve_stream(const Field& F, const Parameters& p);
Field solve_potential(const Field& G, const Parameters& p);

// Matrix-free application of the potential operator
//   P = a^2 z^2 d_zz + a(5+a) z d_z + d_tt - tan t d_t + 6,
// same stencils as the assembled matrix. This is the forward map defining
// G := P Pi in the dynamics.
Field apply_potential_operator(const Field& Pi, const Parameters& p);

// Same for the stream operator (round-trip tests).
Field apply_stream_operator(const Field& Psi, const Parameters& p);

} // namespace enpp
