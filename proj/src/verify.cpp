#include "enpp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "enpp/dynamics.hpp"
#include "enpp/elliptic.hpp"
#include "enpp/norms.hpp"
#include "enpp/operators.hpp"
#include "enpp/profiles.hpp"
#include "enpp/testfields.hpp"

namespace enpp {

namespace {

double rel_err(double measured, double reference) {
    return std::abs(measured - reference) / std::max(std::abs(reference), 1e-300);
}

double order_from(double coarse, double fine) {
    if (fine <= 0.0 || coarse <= 0.0) return 0.0;
    return std::log(coarse / fine) / std::log(2.0);
}

// |L_K(F*) - 4a/(1+z)| (1+z)/(4a), max over nodes.
double lk_profile_residual(const GridPtr& g, const Parameters& p) {
    Field F = f_star_field(g, p);
    RadialFunction lk = l_k(F);
    double worst = 0.0;
    for (std::size_t i = 0; i < g->nz(); ++i) {
        double z = g->z(i);
        double exact = 4.0 * p.alpha / (1.0 + z);
        worst = std::max(worst, std::abs(lk.v[i] - exact) * (1.0 + z) / (4.0 * p.alpha));
    }
    return worst;
}

// Commutation residual |L_K(L_F*(f)) - L(L_K(f))| / |L(L_K(f))| on one field.
double commutation_residual(const GridPtr& g, const Parameters& p, std::uint64_t seed) {
    FieldFamilyOptions opt;
    opt.compact = true;
    Field f = random_test_field(g, seed, opt);
    RadialFunction lhs = l_k(op_L_fstar(f, p));
    RadialFunction rhs_r = l_k(f);
    Field rhs_f = op_L(broadcast(rhs_r));
    RadialFunction rhs(g);
    for (std::size_t i = 0; i < g->nz(); ++i) rhs.v[i] = rhs_f.at(i, 0);
    RadialFunction diff(g);
    for (std::size_t i = 0; i < g->nz(); ++i) diff.v[i] = lhs.v[i] - rhs.v[i];
    return flat_l2(diff) / std::max(flat_l2(rhs), 1e-300);
}

// Radial factors of the manufactured stream solution sin(2t) z^2/(1+z)^4.
struct RadialParts {
    double h, zh1, z2h2;  // h, z h', z^2 h''
};
RadialParts manufactured_radial(double z) {
    double u = 1.0 + z;
    double h = z * z / std::pow(u, 4);
    double h1 = 2.0 * z / std::pow(u, 4) - 4.0 * z * z / std::pow(u, 5);
    double h2 = 2.0 / std::pow(u, 4) - 16.0 * z / std::pow(u, 5) +
                20.0 * z * z / std::pow(u, 6);
    return {h, z * h1, z * z * h2};
}

// Relative L2 error of the manufactured stream solve at one resolution.
double manufactured_stream_error(double z_min, double z_max, std::size_t nz,
                                 std::size_t nt, const Parameters& p) {
    GridPtr g = make_grid(z_min, z_max, nz, nt);
    Field exact = sample(g, [](double z, double t) {
        return std::sin(2.0 * t) * manufactured_radial(z).h;
    });
    // Angular part annihilates sin(2t); the radial terms remain.
    Field rhs = sample(g, [&](double z, double t) {
        RadialParts r = manufactured_radial(z);
        return std::sin(2.0 * t) *
               (-p.alpha * p.alpha * r.z2h2 - p.alpha * (5.0 + p.alpha) * r.zh1);
    });
    Field sol = solve_stream(rhs, p);
    Field diff = sol - exact;
    return flat_l2(diff) / flat_l2(exact);
}

// Same for the potential problem with angular profile sin^2(2t).
double manufactured_potential_error(double z_min, double z_max, std::size_t nz,
                                    std::size_t nt, const Parameters& p) {
    GridPtr g = make_grid(z_min, z_max, nz, nt);
    auto ang = [](double t) { return std::sin(2.0 * t) * std::sin(2.0 * t); };
    auto ang1 = [](double t) { return 2.0 * std::sin(4.0 * t); };
    auto ang2 = [](double t) { return 8.0 * std::cos(4.0 * t); };
    Field exact = sample(g, [&](double z, double t) {
        return ang(t) * manufactured_radial(z).h;
    });
    Field rhs = sample(g, [&](double z, double t) {
        RadialParts r = manufactured_radial(z);
        double radial = p.alpha * p.alpha * r.z2h2 + p.alpha * (5.0 + p.alpha) * r.zh1;
        double angular = r.h * (ang2(t) - std::tan(t) * ang1(t) + 6.0 * ang(t));
        return radial * ang(t) + angular;
    });
    Field sol = solve_potential(rhs, p);
    Field diff = sol - exact;
    return flat_l2(diff) / flat_l2(exact);
}

// Forward image of the cut special solution under the potential operator,
// by analytic differentiation of chi and z^beta.
Field special_forward_analytic(const GridPtr& g, const Parameters& p) {
    return sample(g, [&](double z, double t) {
        double chi = cutoff_chi(z);
        if (chi == 0.0) return 0.0;
        double c1 = cutoff_chi_dz(z), c2 = cutoff_chi_dzz(z);
        double a = p.alpha, b = p.beta;
        double bracket = -chi + a * a * z * z * c2 + a * (5.0 + a) * z * c1 +
                         2.0 * a * a * b * z * c1;
        return bracket * pi_radial(z, p) * pi_angular(t);
    });
}

double special_roundtrip_error(double z_min, double z_max, std::size_t nz,
                               std::size_t nt, const Parameters& p) {
    GridPtr g = make_grid(z_min, z_max, nz, nt);
    SpecialPi unit;
    Field exact = special_pi(unit, g, p);
    Field rhs = special_forward_analytic(g, p);
    Field sol = solve_potential(rhs, p);
    Field diff = sol - exact;
    return flat_l2(diff) / flat_l2(exact);
}

// max |P Pi_s| / |Pi_s| over nodes inside the cutoff support (analytic
// operator image; diverges near the left cutoff edge as the grid refines).
double special_bound_literal(const GridPtr& g, const Parameters& p) {
    Field num = special_forward_analytic(g, p);
    SpecialPi unit;
    Field den = special_pi(unit, g, p);
    double worst = 0.0;
    for (std::size_t i = 0; i < num.v.size(); ++i)
        if (den.v[i] != 0.0)
            worst = std::max(worst, std::abs(num.v[i]) / std::abs(den.v[i]));
    return worst;
}

// max |P Pi_s| / |Pi_0| against the uncut profile on the support (the bound
// the cutoff construction actually provides).
double special_bound_support(const GridPtr& g, const Parameters& p) {
    Field num = special_forward_analytic(g, p);
    double worst = 0.0;
    for (std::size_t i = 0; i < g->nz(); ++i) {
        double z = g->z(i);
        if (cutoff_chi(z) == 0.0) continue;
        for (std::size_t j = 0; j < g->ntheta(); ++j) {
            double pi0 = std::abs(pi_radial(z, p) * pi_angular(g->theta(j)));
            if (pi0 < 1e-14) continue;
            worst = std::max(worst, std::abs(num.at(i, j)) / pi0);
        }
    }
    return worst;
}

Field odd_logz_field(const GridPtr& g, std::uint64_t seed) {
    SplitMix64 rng(seed);
    const double t0 = std::log(g->z(0)), t1 = std::log(g->z(g->nz() - 1));
    const double tc = 0.5 * (t0 + t1), tw = 0.30 * (t1 - t0);
    const int m = rng.uniform_int(1, 3);
    const double amp = rng.uniform(0.5, 1.5);
    Field f(g);
    for (std::size_t i = 0; i < g->nz(); ++i) {
        double s = (std::log(g->z(i)) - tc) / tw;
        double radial = (std::abs(s) < 1.0)
                            ? amp * s * std::exp(1.0 - 1.0 / (1.0 - s * s))
                            : 0.0;
        for (std::size_t j = 0; j < g->ntheta(); ++j)
            f.at(i, j) = radial * std::pow(std::sin(2.0 * g->theta(j)), m);
    }
    return f;
}

} // namespace

PairingRatios coercivity_ratios(const Field& G, const Field& phi_F, const Parameters& p) {
    Field MG = op_M_G(G, phi_F, p);
    PairingRatios r;
    double n0 = weighted_l2(G, G, p.eta);
    r.k0 = weighted_l2(MG, G, p.eta) / n0;

    Field dtG = d_theta(G), dzG = d_z(G);
    Field dtM = d_theta(MG), dzM = d_z(MG);
    double num = weighted_l2(MG, G, p.eta) + 9.0 * weighted_l2(dtM, dtG, p.gamma) +
                 weighted_l2(dzM, dzG, p.eta);
    double den = n0 + 9.0 * weighted_l2(dtG, dtG, p.gamma) +
                 weighted_l2(dzG, dzG, p.eta);
    r.k1_combined = num / den;
    return r;
}

CoercivityReport run_coercivity(const Config& cfg, int samples) {
    Parameters p = make_parameters(cfg.alpha, cfg.resolved_delta(), cfg.k);
    GridPtr g = make_grid(cfg.z_min, cfg.z_max, cfg.nz, cfg.ntheta);
    Field F = f_star_field(g, p);
    Field phi_F = solve_stream(F, p);

    std::vector<double> k0(samples), k1(samples);
#pragma omp parallel for schedule(dynamic)
    for (int s = 0; s < samples; ++s) {
        Field G = random_test_field(g, cfg.seed + std::uint64_t(s) * 7919u);
        PairingRatios r = coercivity_ratios(G, phi_F, p);
        k0[std::size_t(s)] = r.k0;
        k1[std::size_t(s)] = r.k1_combined;
    }

    auto median = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        return v[v.size() / 2];
    };
    CoercivityReport rep;
    rep.samples = samples;
    rep.k0_min = *std::min_element(k0.begin(), k0.end());
    rep.k0_median = median(k0);
    rep.k1_min = *std::min_element(k1.begin(), k1.end());
    rep.k1_median = median(k1);
    rep.threshold = 0.5 - 10.0 * cfg.alpha;
    rep.pass = (rep.k0_min >= rep.threshold) && (rep.k1_min > 0.0);
    return rep;
}

VerificationSuiteResult run_verification_suite(const Config& cfg) {
    VerificationSuiteResult res;
    Parameters p = make_parameters(cfg.alpha, cfg.resolved_delta(), cfg.k);
    GridPtr g = make_grid(cfg.z_min, cfg.z_max, cfg.nz, cfg.ntheta);
    GridPtr g_half = make_grid(cfg.z_min, cfg.z_max, cfg.nz / 2, cfg.ntheta / 2);

    auto push = [&](VerificationRow row) { res.rows.push_back(std::move(row)); };

    { // nonlocal profile identity
        VerificationRow r;
        r.name = "lk_profile_identity";
        r.residual = lk_profile_residual(g, p);
        r.tolerance = 1e-4;
        r.order = order_from(lk_profile_residual(g_half, p), r.residual);
        r.has_order = true;
        r.pass = r.residual <= r.tolerance && r.order >= 2.0;
        push(r);
    }

    { // boundary identity L_K(z f_z)(0) = -int f(0) K, Richardson in z_min
        auto value_at = [&](double zmin) {
            GridPtr gg = make_grid(zmin, cfg.z_max, cfg.nz, cfg.ntheta);
            Field f = sample(gg, [](double z, double t) {
                return -z * std::exp(-z) * (3.0 * std::sin(t) * std::cos(t) * std::cos(t));
            });
            return l_k(f).v[0];
        };
        double k2 = 0.0; // oracle: quadrature of K^2
        {
            std::vector<double> x, w;
            gauss_legendre(512, 0.0, 2.0 * std::atan(1.0), x, w);
            for (std::size_t i = 0; i < x.size(); ++i) {
                double kk = 3.0 * std::sin(x[i]) * std::cos(x[i]) * std::cos(x[i]);
                k2 += w[i] * kk * kk;
            }
        }
        double extrap = 2.0 * value_at(cfg.z_min / 2.0) - value_at(cfg.z_min);
        VerificationRow r;
        r.name = "lk_boundary_identity";
        r.residual = rel_err(extrap, -k2);
        r.tolerance = 1e-4;
        r.pass = r.residual <= r.tolerance;
        push(r);
    }

    { // commutation identity
        VerificationRow r;
        r.name = "commutation_identity";
        double worst = 0.0;
        for (std::uint64_t s = 0; s < 3; ++s)
            worst = std::max(worst, commutation_residual(g, p, cfg.seed + s));
        r.residual = worst;
        r.tolerance = 1e-4;
        r.order = order_from(commutation_residual(g_half, p, cfg.seed),
                             commutation_residual(g, p, cfg.seed));
        r.has_order = true;
        r.pass = r.residual <= r.tolerance && r.order >= 2.0;
        push(r);
    }

    { // pairing identity (L(g) w, g w) = 1/2 |g w|^2
        VerificationRow r;
        r.name = "pairing_identity";
        double worst = 0.0;
        for (std::uint64_t s = 0; s < 10; ++s) {
            Field f = random_test_field(g, cfg.seed + 100 + s);
            double lhs = weighted_l2(op_L(f), f, 0.0);
            double rhs = 0.5 * weighted_l2(f, f, 0.0);
            worst = std::max(worst, rel_err(lhs, rhs));
        }
        r.residual = worst;
        r.tolerance = 1e-6;
        r.pass = r.residual <= r.tolerance;
        push(r);
    }

    { // Sturm-Liouville kernel of the angular factor
        VerificationRow r;
        r.name = "sl_kernel";
        double worst = 0.0;
        for (std::size_t j = 0; j < g->ntheta(); ++j) {
            double t = g->theta(j);
            double resid = -2.0 * std::cos(2.0 * t) + std::tan(t) * std::sin(2.0 * t) +
                           6.0 * pi_angular(t);
            worst = std::max(worst, std::abs(resid));
        }
        r.residual = worst;
        r.tolerance = 1e-12;
        r.pass = r.residual <= r.tolerance;
        push(r);
    }

    { // radial Euler kernel of z^beta, analytic derivatives
        VerificationRow r;
        r.name = "euler_ode_kernel";
        double worst = 0.0;
        for (double a : {0.01, 0.05, 0.1}) {
            Parameters pa = make_parameters(a, a / 2.0, 0);
            for (std::size_t i = 0; i < g->nz(); ++i) {
                double z = g->z(i);
                if (z <= 1.0) continue;
                double b = pa.beta;
                double resid = a * a * b * (b - 1.0) + a * (5.0 + a) * b + 1.0;
                worst = std::max(worst, std::abs(resid)); // z^beta cancels
            }
        }
        r.residual = worst;
        r.tolerance = 1e-10;
        r.pass = r.residual <= r.tolerance;
        push(r);
    }

    { // alpha * beta pinned to (sqrt(21) - 5)/2
        VerificationRow r;
        r.name = "alpha_beta_invariant";
        const double target = (std::sqrt(21.0) - 5.0) / 2.0;
        double worst = 0.0;
        for (double a : {0.01, 0.05, 0.1, 0.2}) {
            Parameters pa = make_parameters(a, 0.0, 0);
            worst = std::max(worst, std::abs(a * pa.beta - target));
        }
        r.residual = worst;
        r.tolerance = 1e-12;
        r.pass = r.residual <= r.tolerance;
        push(r);
    }

    { // manufactured stream solve, order from a three-grid ladder
        double e1 = manufactured_stream_error(cfg.z_min, cfg.z_max, 96, 24, p);
        double e2 = manufactured_stream_error(cfg.z_min, cfg.z_max, 192, 48, p);
        double e3 = manufactured_stream_error(cfg.z_min, cfg.z_max, 384, 96, p);
        VerificationRow r;
        r.name = "elliptic_stream_manufactured";
        r.residual = e3;
        r.tolerance = 1e-3;
        r.order = std::min(order_from(e1, e2), order_from(e2, e3));
        r.has_order = true;
        // the two-grid estimator fluctuates around the asymptotic rate 2
        r.pass = r.residual <= r.tolerance && r.order >= 1.9;
        push(r);
    }

    { // manufactured potential solve
        double e1 = manufactured_potential_error(cfg.z_min, cfg.z_max, 96, 24, p);
        double e2 = manufactured_potential_error(cfg.z_min, cfg.z_max, 192, 48, p);
        double e3 = manufactured_potential_error(cfg.z_min, cfg.z_max, 384, 96, p);
        VerificationRow r;
        r.name = "elliptic_potential_manufactured";
        r.residual = e3;
        r.tolerance = 1e-3;
        r.order = std::min(order_from(e1, e2), order_from(e2, e3));
        r.has_order = true;
        // the two-grid estimator fluctuates around the asymptotic rate 2
        r.pass = r.residual <= r.tolerance && r.order >= 1.9;
        push(r);
    }

    { // special-solution round trip
        double e1 = special_roundtrip_error(cfg.z_min, cfg.z_max, 128, 24, p);
        double e2 = special_roundtrip_error(cfg.z_min, cfg.z_max, 256, 48, p);
        double e3 = special_roundtrip_error(cfg.z_min, cfg.z_max, 512, 96, p);
        VerificationRow r;
        r.name = "special_solution_roundtrip";
        r.residual = e3;
        r.tolerance = 1e-2;
        r.order = std::min(order_from(e1, e2), order_from(e2, e3));
        r.has_order = true;
        // the two-grid estimator fluctuates around the asymptotic rate 2
        r.pass = r.residual <= r.tolerance && r.order >= 1.9;
        push(r);
    }

    { // P Pi_0 = -Pi_0 on z > 1, analytic derivatives
        VerificationRow r;
        r.name = "special_solution_kernel";
        double worst = 0.0;
        for (std::size_t i = 0; i < g->nz(); ++i) {
            double z = g->z(i);
            if (z <= 1.0) continue;
            double b = p.beta, a = p.alpha;
            // radial Euler bracket + angular SL bracket, both analytic
            double radial = a * a * b * (b - 1.0) + a * (5.0 + a) * b + 1.0;
            worst = std::max(worst, std::abs(radial));
        }
        for (std::size_t j = 0; j < g->ntheta(); ++j) {
            double t = g->theta(j);
            double sl = -2.0 * std::cos(2.0 * t) + std::tan(t) * std::sin(2.0 * t) +
                        6.0 * pi_angular(t);
            worst = std::max(worst, std::abs(sl));
        }
        r.residual = worst;
        r.tolerance = 1e-8;
        r.pass = r.residual <= r.tolerance;
        push(r);
    }

    { // pointwise bound of the forward image against the cut solution.
        // The sup of |P Pi| / |Pi| over the cutoff support grows without
        // bound as nodes approach z = 1/2 (second derivatives of any C^2
        // cutoff outrun the cutoff itself there), so the ladder measurement
        // is reported primarily as documentation; the grid-stable statement
        // is the bound against the uncut profile, next row.
        double c1 = special_bound_literal(make_grid(cfg.z_min, cfg.z_max, 256, 32), p);
        double c2 = special_bound_literal(make_grid(cfg.z_min, cfg.z_max, 512, 32), p);
        double c3 = special_bound_literal(make_grid(cfg.z_min, cfg.z_max, 1024, 32), p);
        VerificationRow r;
        r.name = "special_bound_cut_ratio";
        double lo = std::min({c1, c2, c3}), hi = std::max({c1, c2, c3});
        r.residual = hi / lo;  // grid stability of the measured constant
        r.tolerance = 1.5;
        r.pass = r.residual <= r.tolerance;
        r.waived = !r.pass;
        r.note = "C(grid) = " + std::to_string(c1) + " / " + std::to_string(c2) +
                 " / " + std::to_string(c3) + " on nz = 256/512/1024; the cut ratio "
                 "diverges near z = 1/2 for every C^2 cutoff, see next row";
        push(r);
    }

    { // bound against the uncut profile (grid stable)
        double c1 = special_bound_support(make_grid(cfg.z_min, cfg.z_max, 256, 32), p);
        double c2 = special_bound_support(make_grid(cfg.z_min, cfg.z_max, 512, 32), p);
        double c3 = special_bound_support(make_grid(cfg.z_min, cfg.z_max, 1024, 32), p);
        VerificationRow r;
        r.name = "special_bound_support";
        double lo = std::min({c1, c2, c3}), hi = std::max({c1, c2, c3});
        r.residual = hi / lo;
        r.tolerance = 1.05;
        r.pass = r.residual <= r.tolerance;
        r.note = "C = " + std::to_string(c2);
        push(r);
    }

    { // nonlocal annihilation on odd-in-log-z fields
        VerificationRow r;
        r.name = "lk_annihilation";
        double worst = 0.0;
        for (std::uint64_t s = 0; s < 5; ++s) {
            Field f = odd_logz_field(g, cfg.seed + 200 + s);
            worst = std::max(worst, std::abs(l_k_at_zmin(f)) / flat_l2(f));
        }
        r.residual = worst;
        r.tolerance = 1e-8;
        r.pass = r.residual <= r.tolerance;
        push(r);
    }

    { // nonlocal boundedness: |L_K(f)| <= C |f| in H^0 after projection.
      // A universal constant exists but it is not 1: the output is constant
      // in theta and pays the whole sin(2t)^{-eta} measure, so K-shaped
      // angular data pushes the ratio above 1. C is pinned at 4 and the
      // measurement is repeated on a coarser grid as a stability check.
        VerificationRow r;
        r.name = "lk_boundedness";
        auto worst_ratio = [&](const GridPtr& gg) {
            double worst = 0.0;
            for (std::uint64_t s = 0; s < 100; ++s) {
                Field f = random_test_field(gg, cfg.seed + 300 + s);
                f = projector_P(f, p);
                double num = h_k_norm(broadcast(l_k(f)), p).norm();
                double den = h_k_norm(f, p).norm();
                worst = std::max(worst, num / den);
            }
            return worst;
        };
        double fine = worst_ratio(g), coarse = worst_ratio(g_half);
        r.residual = fine;
        r.tolerance = 4.0;
        r.pass = r.residual <= r.tolerance &&
                 std::abs(fine - coarse) <= 0.2 * std::max(fine, coarse);
        r.note = "coarse-grid ratio " + std::to_string(coarse);
        push(r);
    }

    { // stream decomposition: singular part grows like 1/alpha, remainder stays put
        // (radial spacing tracks alpha so the advective term stays resolved)
        auto decompose = [&](double a, std::size_t nz) {
            GridPtr gs = make_grid(cfg.z_min, cfg.z_max, nz, 128);
            FieldFamilyOptions opt;
            opt.compact = true;
            Field F = random_test_field(gs, cfg.seed + 400, opt);
            Parameters pa = make_parameters(a, a / 2.0, 0);
            Field psi = solve_stream(F, pa);
            RadialFunction lk = l_k(F);
            Field sing(gs), rem(gs);
            for (std::size_t i = 0; i < gs->nz(); ++i)
                for (std::size_t j = 0; j < gs->ntheta(); ++j) {
                    sing.at(i, j) = std::sin(2.0 * gs->theta(j)) * lk.v[i] / (4.0 * a);
                    rem.at(i, j) = psi.at(i, j) - sing.at(i, j);
                }
            Field rem_tt = partial_theta(partial_theta(rem));
            return std::pair<double, double>(h_k_norm(rem_tt, pa).norm(),
                                             h_k_norm(sing, pa).norm());
        };
        auto [rem2, sing2] = decompose(1e-2, 1536);
        auto [rem3, sing3] = decompose(1e-3, 14336);
        VerificationRow r;
        r.name = "stream_decomposition_trend";
        // remainder as a fraction of the singular part, alpha-uniform
        r.residual = std::max(rem2 / sing2, rem3 / sing3);
        r.tolerance = 0.05;
        double singular_ratio = sing3 / sing2;
        r.pass = r.residual <= r.tolerance && singular_ratio > 8.0 && singular_ratio < 12.0;
        r.note = "singular-part ratio " + std::to_string(singular_ratio) +
                 " (expect ~10); remainder fractions " + std::to_string(rem2 / sing2) +
                 " / " + std::to_string(rem3 / sing3);
        push(r);
    }

    return res;
}

} // namespace enpp
