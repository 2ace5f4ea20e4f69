#include <chrono>
#include <cmath>

#include <doctest.h>

#include "enpp/elliptic.hpp"
#include "enpp/norms.hpp"
#include "enpp/operators.hpp"
#include "enpp/profiles.hpp"
#include "enpp/testfields.hpp"

using namespace enpp;

TEST_SUITE_BEGIN("elliptic");

namespace {

// manufactured radial profile z^2/(1+z)^4 and its scaled derivatives
struct Rad {
    double h, zh1, z2h2;
};
Rad rad(double z) {
    double u = 1.0 + z;
    return {z * z / std::pow(u, 4),
            z * (2.0 * z / std::pow(u, 4) - 4.0 * z * z / std::pow(u, 5)),
            z * z *
                (2.0 / std::pow(u, 4) - 16.0 * z / std::pow(u, 5) +
                 20.0 * z * z / std::pow(u, 6))};
}

double stream_error(std::size_t nz, std::size_t nt, const Parameters& p) {
    GridPtr g = make_grid(1e-2, 1e4, nz, nt);
    Field exact = sample(g, [](double z, double t) { return std::sin(2.0 * t) * rad(z).h; });
    Field rhs = sample(g, [&](double z, double t) {
        Rad r = rad(z);
        return std::sin(2.0 * t) *
               (-p.alpha * p.alpha * r.z2h2 - p.alpha * (5.0 + p.alpha) * r.zh1);
    });
    Field sol = solve_stream(rhs, p);
    Field diff = sol - exact;
    return flat_l2(diff) / flat_l2(exact);
}

double potential_error(std::size_t nz, std::size_t nt, const Parameters& p) {
    GridPtr g = make_grid(1e-2, 1e4, nz, nt);
    auto ang = [](double t) { return std::sin(2.0 * t) * std::sin(2.0 * t); };
    Field exact = sample(g, [&](double z, double t) { return ang(t) * rad(z).h; });
    Field rhs = sample(g, [&](double z, double t) {
        Rad r = rad(z);
        double radial = p.alpha * p.alpha * r.z2h2 + p.alpha * (5.0 + p.alpha) * r.zh1;
        double angular = r.h * (8.0 * std::cos(4.0 * t) -
                                std::tan(t) * 2.0 * std::sin(4.0 * t) + 6.0 * ang(t));
        return radial * ang(t) + angular;
    });
    Field sol = solve_potential(rhs, p);
    Field diff = sol - exact;
    return flat_l2(diff) / flat_l2(exact);
}

} // namespace

TEST_CASE("zero right-hand side gives the zero solution") {
    Parameters p = make_parameters(0.05, 0.025, 0);
    GridPtr g = make_grid(1e-2, 1e4, 96, 24);
    Field zero(g);
    Field s1 = solve_stream(zero, p);
    Field s2 = solve_potential(zero, p);
    for (double v : s1.v) CHECK(v == 0.0);
    for (double v : s2.v) CHECK(v == 0.0);
}

TEST_CASE("manufactured solutions converge at order >= 2") {
    Parameters p = make_parameters(0.05, 0.025, 0);

    double s1 = stream_error(96, 24, p), s2 = stream_error(192, 48, p),
           s3 = stream_error(384, 96, p);
    CAPTURE(s1);
    CAPTURE(s2);
    CAPTURE(s3);
    CHECK(std::log2(s1 / s2) >= 1.9);
    CHECK(std::log2(s2 / s3) >= 1.9);

    double p1 = potential_error(96, 24, p), p2 = potential_error(192, 48, p),
           p3 = potential_error(384, 96, p);
    CAPTURE(p1);
    CAPTURE(p2);
    CAPTURE(p3);
    CHECK(std::log2(p1 / p2) >= 1.9);
    CHECK(std::log2(p2 / p3) >= 1.9);
}

TEST_CASE("stream solve and apply invert each other to solver tolerance") {
    Parameters p = make_parameters(0.05, 0.025, 0);
    GridPtr g = make_grid(1e-2, 1e4, 128, 32);
    EllipticSolver solver(g, p, EllipticKind::stream);
    Field f = random_test_field(g, 99);
    // both directions: apply then solve, and solve then apply
    Field rt = solver.solve(solver.apply(f));
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < f.v.size(); ++i) {
        num += (rt.v[i] - f.v[i]) * (rt.v[i] - f.v[i]);
        den += f.v[i] * f.v[i];
    }
    CHECK(std::sqrt(num / den) < 1e-7);

    Field sol = solver.solve(f);
    Field back = solver.apply(sol);
    num = den = 0.0;
    for (std::size_t i = 0; i < f.v.size(); ++i) {
        num += (back.v[i] - f.v[i]) * (back.v[i] - f.v[i]);
        den += f.v[i] * f.v[i];
    }
    CHECK(std::sqrt(num / den) < 1e-7);
}

TEST_CASE("potential operator annihilates the uncut special solution up to +Pi0") {
    // On z > 1 the cut solution equals the raw product solution, where
    // P Pi0 = -Pi0; the finite-difference application reproduces this to
    // discretization accuracy.
    Parameters p = make_parameters(0.05, 0.025, 0);
    GridPtr g = make_grid(1e-2, 1e4, 512, 64);
    SpecialPi unit;
    Field pi = special_pi(unit, g, p);
    Field img = apply_potential_operator(pi, p);
    for (std::size_t i = 0; i < g->nz(); ++i) {
        double z = g->z(i);
        if (z <= 2.0 || z >= 1e3) continue;  // away from the blend and the edge
        for (std::size_t j = 0; j < g->ntheta(); ++j) {
            double denom = std::max(std::abs(pi.at(i, j)), 1e-30);
            CHECK(std::abs(img.at(i, j) + pi.at(i, j)) / denom < 5e-3);
        }
    }

    // theta-only field in the angular kernel: P reduces to the SL operator
    Field ang = sample(g, [](double, double t) { return pi_angular(t); });
    Field img2 = apply_potential_operator(ang, p);
    for (std::size_t i = 2; i < g->nz() - 2; i += 19)
        for (std::size_t j = 0; j < g->ntheta(); ++j)
            CHECK(std::abs(img2.at(i, j)) < 1e-5);
}

TEST_CASE("special-solution round trip with the analytic forward image") {
    Parameters p = make_parameters(0.05, 0.025, 0);
    auto roundtrip = [&](std::size_t nz, std::size_t nt) {
        GridPtr g = make_grid(1e-2, 1e4, nz, nt);
        SpecialPi unit;
        Field exact = special_pi(unit, g, p);
        Field rhs = sample(g, [&](double z, double t) {
            double chi = cutoff_chi(z);
            if (chi == 0.0) return 0.0;
            double c1 = cutoff_chi_dz(z), c2 = cutoff_chi_dzz(z);
            double a = p.alpha, b = p.beta;
            double bracket = -chi + a * a * z * z * c2 + a * (5.0 + a) * z * c1 +
                             2.0 * a * a * b * z * c1;
            return bracket * std::pow(z, b) * pi_angular(t);
        });
        Field sol = solve_potential(rhs, p);
        Field diff = sol - exact;
        return flat_l2(diff) / flat_l2(exact);
    };
    double e1 = roundtrip(128, 24), e2 = roundtrip(256, 48), e3 = roundtrip(512, 96);
    CAPTURE(e1);
    CAPTURE(e2);
    CAPTURE(e3);
    CHECK(std::log2(e1 / e2) >= 1.9);
    CHECK(std::log2(e2 / e3) >= 1.9);
    CHECK(e3 < 1e-2);
}

TEST_CASE("stream decomposition trend as alpha decreases") {
    // The advective radial term must be resolved (spacing ~ alpha in log z)
    // for the discrete remainder to track the continuum decomposition, so
    // each alpha gets its own radial resolution.
    auto parts = [&](double a, std::size_t nz) {
        GridPtr g = make_grid(1e-2, 1e4, nz, 128);
        FieldFamilyOptions opt;
        opt.compact = true;
        Field F = random_test_field(g, 4242, opt);
        Parameters p = make_parameters(a, a / 2.0, 0);
        Field psi = solve_stream(F, p);
        RadialFunction lk = l_k(F);
        Field sing(g), rem(g);
        for (std::size_t i = 0; i < g->nz(); ++i)
            for (std::size_t j = 0; j < g->ntheta(); ++j) {
                sing.at(i, j) = std::sin(2.0 * g->theta(j)) * lk.v[i] / (4.0 * a);
                rem.at(i, j) = psi.at(i, j) - sing.at(i, j);
            }
        Field rem_tt = partial_theta(partial_theta(rem));
        return std::pair<double, double>(h_k_norm(rem_tt, p).norm(),
                                         h_k_norm(sing, p).norm());
    };
    auto [rem2, sing2] = parts(1e-2, 1536);
    auto [rem3, sing3] = parts(1e-3, 14336);
    CAPTURE(rem2);
    CAPTURE(rem3);
    CAPTURE(sing2);
    CAPTURE(sing3);
    // singular part scales like 1/alpha; the remainder stays a small
    // fraction of it at both alphas (the discrete remainder also carries
    // the near-kernel angular eigenvalue amplified through the radial
    // transport, which is why this test needs the fine angular grid; the
    // relative form is the grid-honest transcription of the decomposition
    // estimate)
    CHECK(sing3 / sing2 == doctest::Approx(10.0).epsilon(0.05));
    CHECK(rem2 / sing2 < 0.02);
    CHECK(rem3 / sing3 < 0.02);
}

TEST_CASE("stream solve of the steady profile matches the velocity asymptotics") {
    // U(Phi_F) = -3 sin(2t)/(1+z) + O(alpha), interior nodes
    auto err = [&](double a) {
        Parameters p = make_parameters(a, a / 2.0, 0);
        GridPtr g = make_grid(1e-2, 1e4, 256, 64);
        Field F = f_star_field(g, p);
        Field phi = solve_stream(F, p);
        Velocity vel = velocity_functionals(phi, p);
        double worst = 0.0;
        for (std::size_t i = g->nz() / 20; i < g->nz() - g->nz() / 20; ++i)
            for (std::size_t j = 0; j < g->ntheta(); ++j) {
                double expect = -3.0 * std::sin(2.0 * g->theta(j)) / (1.0 + g->z(i));
                worst = std::max(worst, std::abs(vel.U.at(i, j) - expect));
            }
        return worst;
    };
    double e1 = err(0.1), e2 = err(0.05);
    CAPTURE(e1);
    CAPTURE(e2);
    CHECK(e1 <= 5.0 * 0.1);
    CHECK(e2 <= 5.0 * 0.05);
    CHECK(e2 < e1);
}

TEST_CASE("solver performance stays within the experiment budget") {
    // factorization is cached; repeated solves are what the dynamics pays for
    Parameters p = make_parameters(0.05, 0.025, 0);
    GridPtr g = make_grid(1e-2, 1e4, 512, 128);
    auto t0 = std::chrono::high_resolution_clock::now();
    EllipticSolver solver(g, p, EllipticKind::stream);
    auto t1 = std::chrono::high_resolution_clock::now();
    Field f = random_test_field(g, 5);
    Field x = solver.solve(f);
    for (int r = 0; r < 4; ++r) x = solver.solve(f);
    auto t2 = std::chrono::high_resolution_clock::now();
    double factor_s = std::chrono::duration<double>(t1 - t0).count();
    double solve_s = std::chrono::duration<double>(t2 - t1).count() / 5.0;
    CAPTURE(factor_s);
    CAPTURE(solve_s);
    CHECK(factor_s < 30.0);
    CHECK(solve_s < 0.5);
}

TEST_SUITE_END();
