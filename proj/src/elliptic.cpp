#include "enpp/elliptic.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <lapacke.h>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "enpp/grid.hpp"

namespace enpp {

namespace {

// Angular stencils (second and first derivative) per theta row.
//
// Interior rows use a centered window of up to 5 Gauss nodes. Edge rows fold
// the physical boundary in: Dirichlet rows add the boundary point with value
// zero (column dropped); Neumann rows fit a polynomial with vanishing slope
// at the boundary (basis 1, s^2, s^3, s^4 around the boundary), which bakes
// the zero-flux condition into the row.
struct ThetaStencils {
    struct Row {
        std::vector<std::size_t> cols;
        std::vector<double> w2, w1;
    };
    std::vector<Row> rows;
};

ThetaStencils build_theta_stencils(const Grid& g, bool dirichlet) {
    const std::size_t nt = g.ntheta();
    const double pi = 4.0 * std::atan(1.0);
    ThetaStencils st;
    st.rows.resize(nt);

    for (std::size_t j = 0; j < nt; ++j) {
        bool left_edge = (j < 2), right_edge = (j + 2 >= nt);
        if (!left_edge && !right_edge) {
            std::size_t base = j - 2;
            double xs[5], w2[5], w1[5];
            for (int s = 0; s < 5; ++s) xs[s] = g.theta(base + s);
            fd_weights(g.theta(j), xs, 5, 2, w2);
            fd_weights(g.theta(j), xs, 5, 1, w1);
            auto& r = st.rows[j];
            for (int s = 0; s < 5; ++s) {
                r.cols.push_back(base + s);
                r.w2.push_back(w2[s]);
                r.w1.push_back(w1[s]);
            }
            continue;
        }

        const bool left = left_edge;
        const double bnd = left ? 0.0 : pi / 2.0;
        std::size_t idx[4];
        for (int s = 0; s < 4; ++s)
            idx[s] = left ? std::size_t(s) : nt - 4 + std::size_t(s);

        auto& r = st.rows[j];
        if (dirichlet) {
            double xs[5], w2[5], w1[5];
            xs[0] = bnd;
            for (int s = 0; s < 4; ++s) xs[s + 1] = g.theta(idx[s]);
            fd_weights(g.theta(j), xs, 5, 2, w2);
            fd_weights(g.theta(j), xs, 5, 1, w1);
            for (int s = 0; s < 4; ++s) {
                r.cols.push_back(idx[s]);
                r.w2.push_back(w2[s + 1]);
                r.w1.push_back(w1[s + 1]);
            }
        } else {
            // zero slope at bnd: u ~ c0 + c2 s^2 + c3 s^3 + c4 s^4, s = t - bnd
            Eigen::Matrix4d V;
            for (int rI = 0; rI < 4; ++rI) {
                double s = g.theta(idx[rI]) - bnd;
                V(rI, 0) = 1.0;
                V(rI, 1) = s * s;
                V(rI, 2) = s * s * s;
                V(rI, 3) = s * s * s * s;
            }
            Eigen::Matrix4d inv = V.inverse();
            double s0 = g.theta(j) - bnd;
            Eigen::Vector4d b1(0.0, 2.0 * s0, 3.0 * s0 * s0, 4.0 * s0 * s0 * s0);
            Eigen::Vector4d b2(0.0, 2.0, 6.0 * s0, 12.0 * s0 * s0);
            for (int s = 0; s < 4; ++s) {
                r.cols.push_back(idx[s]);
                r.w1.push_back(b1.dot(inv.col(s)));
                r.w2.push_back(b2.dot(inv.col(s)));
            }
        }
    }
    return st;
}

// Dense angular operator (constant term included): stream
// -f_tt + tan f_t + (sec^2 - 6) f, potential +f_tt - tan f_t + 6 f.
Eigen::MatrixXd angular_matrix(const Grid& g, bool stream) {
    const std::size_t nt = g.ntheta();
    ThetaStencils ts = build_theta_stencils(g, stream);
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(nt, nt);
    for (std::size_t j = 0; j < nt; ++j) {
        const double tn = std::tan(g.theta(j));
        const auto& sr = ts.rows[j];
        if (stream) {
            for (std::size_t s = 0; s < sr.cols.size(); ++s)
                M(j, sr.cols[s]) += -sr.w2[s] + tn * sr.w1[s];
            M(j, j) += (1.0 + tn * tn) - 6.0;
        } else {
            for (std::size_t s = 0; s < sr.cols.size(); ++s)
                M(j, sr.cols[s]) += sr.w2[s] - tn * sr.w1[s];
            M(j, j) += 6.0;
        }
    }
    return M;
}

// Banded radial solve for one angular mode of
//   alpha^2 u_tt + 5 alpha u_t + nu u = g   (t = log z, uniform spacing).
//
// The characteristic roots r of (ctt+ct) r^2 + (nu - 2 ctt) r + (ctt-ct)
// satisfy char(1) = nu, so nu < 0 always gives a dichotomy (Dirichlet rows
// at both ends are stable). For nu > 0 the continuum solutions both decay
// rightward; on grids fine enough to represent that (both |r| < 1) the
// outer node has no leverage and the correct closure is two inner rows
// (value and slope -- the regularity selection of the untruncated problem)
// with the outer value following by stable marching. On coarse grids one
// root leaves the unit circle through -1 and the two-ended closure is the
// stable one again. |nu| < 1/2 covers the Neumann-eigenfunction mode
// (exponents 0 and -5/alpha): an inner slope row removes the singular
// branch, the outer Dirichlet row pins the constant (the Pi(inf) = 0
// condition).
struct RadialModeSolver {
    static constexpr lapack_int kl = 2, ku = 2;
    lapack_int n = 0;
    int closure = 0;  // 0: Dir/Dir, 1: slope/Dir, 2: Dir+slope inner, free outer
    std::vector<double> ab;
    std::vector<lapack_int> ipiv;

    void factor(const Grid& g, double alpha, double nu, int forced_closure = -1) {
        n = lapack_int(g.nz());
        const double h = g.dlog();
        const double ctt = alpha * alpha / (h * h);
        const double ct = 5.0 * alpha / (2.0 * h);
        const lapack_int ldab = 2 * kl + ku + 1;
        ab.assign(std::size_t(ldab) * std::size_t(n), 0.0);
        auto at = [&](lapack_int i, lapack_int j) -> double& {
            return ab[std::size_t(kl + ku + i - j) + std::size_t(j) * std::size_t(ldab)];
        };
        auto pde_row = [&](lapack_int row, lapack_int node) {
            at(row, node - 1) += ctt - ct;
            at(row, node) += -2.0 * ctt + nu;
            at(row, node + 1) += ctt + ct;
        };
        auto slope_row = [&](lapack_int row) {
            at(row, 0) += -3.0 / (2.0 * h);
            at(row, 1) += 4.0 / (2.0 * h);
            at(row, 2) += -1.0 / (2.0 * h);
        };

        if (forced_closure >= 0) {
            closure = forced_closure;
        } else if (nu >= 0.5) {
            double max_r;
            const double qa = ctt + ct, qb = nu - 2.0 * ctt, qc = ctt - ct;
            const double disc = qb * qb - 4.0 * qa * qc;
            if (disc >= 0.0) {
                const double s = std::sqrt(disc);
                max_r = std::max(std::abs((-qb + s) / (2.0 * qa)),
                                 std::abs((-qb - s) / (2.0 * qa)));
            } else {
                max_r = std::sqrt(std::abs(qc / qa));
            }
            // margin 2/n keeps the marching growth of a borderline root
            // below e^2
            closure = (max_r <= 1.0 + 2.0 / double(n)) ? 2 : 0;
        } else if (nu > -0.5) {
            closure = 1;
        } else {
            closure = 0;
        }

        if (closure == 2) {
            at(0, 0) = 1.0;
            slope_row(1);
            for (lapack_int i = 2; i < n; ++i) pde_row(i, i - 1);
        } else if (closure == 1) {
            slope_row(0);
            for (lapack_int i = 1; i + 1 < n; ++i) pde_row(i, i);
            at(n - 1, n - 1) = 1.0;
        } else {
            at(0, 0) = 1.0;
            for (lapack_int i = 1; i + 1 < n; ++i) pde_row(i, i);
            at(n - 1, n - 1) = 1.0;
        }

        ipiv.assign(std::size_t(n), 0);
        lapack_int info = LAPACKE_dgbtrf(LAPACK_COL_MAJOR, n, n, kl, ku, ab.data(),
                                         ldab, ipiv.data());
        if (info != 0)
            throw std::runtime_error("radial mode factorization failed (info=" +
                                     std::to_string(info) + ")");
    }

    // g holds nodal data g_0..g_{n-1}; boundary rows carry no data.
    void solve(std::vector<double>& g) const {
        std::vector<double> b(std::size_t(n), 0.0);
        if (closure == 2) {
            for (lapack_int i = 2; i < n; ++i) b[std::size_t(i)] = g[std::size_t(i - 1)];
        } else {
            for (lapack_int i = 1; i + 1 < n; ++i) b[std::size_t(i)] = g[std::size_t(i)];
        }
        const lapack_int ldab = 2 * kl + ku + 1;
        lapack_int info = LAPACKE_dgbtrs(LAPACK_COL_MAJOR, 'N', n, kl, ku, 1, ab.data(),
                                         ldab, ipiv.data(), b.data(), n);
        if (info != 0) throw std::runtime_error("radial mode solve failed");
        g = b;
    }
};

Field apply_pde(const Field& f, const Parameters& p, bool stream);

} // namespace

struct EllipticSolver::Impl {
    GridPtr grid;
    Parameters params;
    EllipticKind kind;

    Eigen::MatrixXd V;                 // angular eigenvectors
    Eigen::PartialPivLU<Eigen::MatrixXd> Vlu;
    std::vector<RadialModeSolver> modes;
    std::vector<double> nus;
    ThetaStencils ts;

    Impl(GridPtr g, const Parameters& p, EllipticKind k)
        : grid(std::move(g)), params(p), kind(k) {
        const Grid& gr = *grid;
        const bool stream = (kind == EllipticKind::stream);
        const std::size_t nt = gr.ntheta();
        ts = build_theta_stencils(gr, /*dirichlet=*/stream);

        Eigen::MatrixXd M = angular_matrix(gr, stream);
        Eigen::EigenSolver<Eigen::MatrixXd> eig(M);
        if (eig.info() != Eigen::Success)
            throw std::runtime_error("angular eigendecomposition failed");
        const double scale = M.norm();
        if (eig.eigenvalues().imag().cwiseAbs().maxCoeff() > 1e-8 * scale)
            throw std::runtime_error("angular operator has non-real spectrum");
        V = eig.eigenvectors().real();
        Vlu.compute(V);
        Eigen::MatrixXd recon = V * eig.eigenvalues().real().asDiagonal() * Vlu.inverse();
        if ((recon - M).norm() > 1e-8 * scale)
            throw std::runtime_error("angular operator is not diagonalizable on this grid");

        nus.resize(nt);
        modes.resize(nt);
        for (std::size_t k2 = 0; k2 < nt; ++k2) {
            nus[k2] = eig.eigenvalues().real()(long(k2));
            if (stream) {
                // multiply the mode equation by -1:
                //   alpha^2 u_tt + 5 alpha u_t - nu u = -g,
                // inner slope row (regular branch), outer Dirichlet.
                modes[k2].factor(gr, params.alpha, -nus[k2], /*forced_closure=*/1);
            } else {
                modes[k2].factor(gr, params.alpha, nus[k2]);
            }
        }
    }

    // The stream system rows applied matrix-free: interior rows are the
    // centered PDE stencils, the edge rows are the boundary closures.
    Field stream_system_apply(const Field& f) const {
        const Grid& g = *grid;
        const std::size_t nz = g.nz(), nt = g.ntheta();
        const double a = params.alpha;
        const double h = g.dlog();
        Field out(f.grid);
        for (std::size_t j = 0; j < nt; ++j) {
            out.at(0, j) =
                (-3.0 * f.at(0, j) + 4.0 * f.at(1, j) - f.at(2, j)) / (2.0 * h);
            out.at(nz - 1, j) = f.at(nz - 1, j);
        }
        const double ctt = -a * a / (h * h);
        const double ct = -5.0 * a / (2.0 * h);
        for (std::size_t i = 1; i + 1 < nz; ++i) {
            for (std::size_t j = 0; j < nt; ++j) {
                double acc = (ctt - ct) * f.at(i - 1, j) - 2.0 * ctt * f.at(i, j) +
                             (ctt + ct) * f.at(i + 1, j);
                const double tn = std::tan(g.theta(j));
                const auto& sr = ts.rows[j];
                for (std::size_t s = 0; s < sr.cols.size(); ++s)
                    acc += (-sr.w2[s] + tn * sr.w1[s]) * f.at(i, sr.cols[s]);
                acc += ((1.0 + tn * tn) - 6.0) * f.at(i, j);
                out.at(i, j) = acc;
            }
        }
        return out;
    }

    // One pass of the mode solver: rhs rows -> eigenbasis -> banded solves
    // -> back. The stream sign flip is folded in here.
    Field mode_solve(const Field& rhs) const {
        const Grid& g = *grid;
        const std::size_t nz = g.nz(), nt = g.ntheta();
        const bool stream = (kind == EllipticKind::stream);

        Eigen::MatrixXd rows(nt, nz);
        const double sgn = stream ? -1.0 : 1.0;
        for (std::size_t i = 0; i < nz; ++i)
            for (std::size_t j = 0; j < nt; ++j)
                rows(long(j), long(i)) = sgn * rhs.at(i, j);
        Eigen::MatrixXd ghat = Vlu.solve(rows);  // (nt, nz), mode-major rows

        std::vector<double> col(nz);
        for (std::size_t k = 0; k < nt; ++k) {
            for (std::size_t i = 0; i < nz; ++i) col[i] = ghat(long(k), long(i));
            modes[k].solve(col);
            for (std::size_t i = 0; i < nz; ++i) ghat(long(k), long(i)) = col[i];
        }

        Eigen::MatrixXd out_rows = V * ghat;  // (nt, nz)
        Field out(rhs.grid);
        for (std::size_t i = 0; i < nz; ++i)
            for (std::size_t j = 0; j < nt; ++j)
                out.at(i, j) = out_rows(long(j), long(i));
        return out;
    }
};

EllipticSolver::EllipticSolver(GridPtr grid, const Parameters& p, EllipticKind kind)
    : impl_(std::make_unique<Impl>(std::move(grid), p, kind)) {}

EllipticSolver::~EllipticSolver() = default;
EllipticSolver::EllipticSolver(EllipticSolver&&) noexcept = default;
EllipticSolver& EllipticSolver::operator=(EllipticSolver&&) noexcept = default;

GridPtr EllipticSolver::grid() const { return impl_->grid; }
EllipticKind EllipticSolver::kind() const { return impl_->kind; }

Field EllipticSolver::solve(const Field& rhs) const {
    const Impl& im = *impl_;
    if (rhs.grid.get() != im.grid.get())
        throw std::invalid_argument("elliptic solve: rhs on a different grid");
    const std::size_t nz = im.grid->nz(), nt = im.grid->ntheta();

    Field out = im.mode_solve(rhs);

    if (im.kind == EllipticKind::stream) {
        // one refinement pass against the discrete system, then verify
        Field b(rhs.grid);
        for (std::size_t i = 1; i + 1 < nz; ++i)
            for (std::size_t j = 0; j < nt; ++j) b.at(i, j) = rhs.at(i, j);
        Field res = b - im.stream_system_apply(out);
        out += im.mode_solve(res);
        res = b - im.stream_system_apply(out);
        double rnorm = 0.0, bnorm = 0.0;
        for (std::size_t r = 0; r < res.v.size(); ++r) {
            rnorm += res.v[r] * res.v[r];
            bnorm += b.v[r] * b.v[r];
        }
        if (bnorm > 0.0 && rnorm > 1e-16 * bnorm) {
            std::ostringstream os;
            os << "stream solve residual " << std::sqrt(rnorm / bnorm)
               << " exceeds 1e-8";
            throw std::runtime_error(os.str());
        }
        return out;
    }

    // potential: residual against the interior finite-difference rows
    double rn = 0.0, bn = 0.0;
    Field back = apply_pde(out, im.params, /*stream=*/false);
    for (std::size_t i = 1; i + 1 < nz; ++i)
        for (std::size_t j = 0; j < nt; ++j) {
            double d = back.at(i, j) - rhs.at(i, j);
            rn += d * d;
            bn += rhs.at(i, j) * rhs.at(i, j);
        }
    if (bn > 0.0 && std::sqrt(rn / bn) > 1e-8) {
        std::ostringstream os;
        os << "potential solve residual " << std::sqrt(rn / bn) << " exceeds 1e-8";
        throw std::runtime_error(os.str());
    }
    return out;
}

Field EllipticSolver::apply(const Field& f) const {
    const Impl& im = *impl_;
    if (f.grid.get() != im.grid.get())
        throw std::invalid_argument("elliptic apply: field on a different grid");
    if (im.kind == EllipticKind::stream) return im.stream_system_apply(f);
    return apply_pde(f, im.params, /*stream=*/false);
}

Field solve_stream(const Field& F, const Parameters& p) {
    return EllipticSolver(F.grid, p, EllipticKind::stream).solve(F);
}

Field solve_potential(const Field& G, const Parameters& p) {
    return EllipticSolver(G.grid, p, EllipticKind::potential).solve(G);
}

namespace {

// PDE applied at every node, one-sided radial stencils at the z edges.
Field apply_pde(const Field& f, const Parameters& p, bool stream) {
    const Grid& g = *f.grid;
    const std::size_t nz = g.nz(), nt = g.ntheta();
    const double a = p.alpha;
    const double h = g.dlog();
    const double rsign = stream ? -1.0 : 1.0;

    ThetaStencils ts = build_theta_stencils(g, stream);
    Field out(f.grid);

    for (std::size_t i = 0; i < nz; ++i) {
        std::size_t ib = (i == 0) ? 0 : (i == nz - 1 ? nz - 3 : i - 1);
        double xs[3], wtt[3], wt[3];
        for (int s = 0; s < 3; ++s) xs[s] = h * double(ib + std::size_t(s));
        fd_weights(h * double(i), xs, 3, 2, wtt);
        fd_weights(h * double(i), xs, 3, 1, wt);

        for (std::size_t j = 0; j < nt; ++j) {
            double acc = 0.0;
            for (int s = 0; s < 3; ++s)
                acc += rsign * (a * a * wtt[s] + 5.0 * a * wt[s]) * f.at(ib + std::size_t(s), j);

            const double tn = std::tan(g.theta(j));
            const auto& sr = ts.rows[j];
            if (stream) {
                for (std::size_t s = 0; s < sr.cols.size(); ++s)
                    acc += (-sr.w2[s] + tn * sr.w1[s]) * f.at(i, sr.cols[s]);
                acc += ((1.0 + tn * tn) - 6.0) * f.at(i, j);
            } else {
                for (std::size_t s = 0; s < sr.cols.size(); ++s)
                    acc += (sr.w2[s] - tn * sr.w1[s]) * f.at(i, sr.cols[s]);
                acc += 6.0 * f.at(i, j);
            }
            out.at(i, j) = acc;
        }
    }
    return out;
}

} // namespace

Field apply_potential_operator(const Field& Pi, const Parameters& p) {
    return apply_pde(Pi, p, /*stream=*/false);
}

Field apply_stream_operator(const Field& Psi, const Parameters& p) {
    return apply_pde(Psi, p, /*stream=*/true);
}

} // namespace enpp
