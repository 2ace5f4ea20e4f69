#include <cmath>

#include <doctest.h>

#include "enpp/grid.hpp"
#include "enpp/params.hpp"
#include "enpp/profiles.hpp"

using namespace enpp;

TEST_SUITE_BEGIN("profiles");

namespace {
const double kPi = 4.0 * std::atan(1.0);
}

TEST_CASE("angular profiles at pinned points") {
    Parameters p = make_parameters(0.1, 0.05, 0);

    // K(pi/4) = 3 sqrt(2)/4
    CHECK(k_profile(kPi / 4.0) == doctest::Approx(1.0606601717798212).epsilon(1e-14));
    // K vanishes toward the axis
    CHECK(k_profile(kPi / 2.0 - 1e-8) < 1e-7);
    CHECK(k_profile(kPi / 2.0) == doctest::Approx(0.0).epsilon(1e-15));

    // Gamma(pi/4) at alpha = 0.1: (2^{-3/2})^{1/30} = 2^{-1/20}
    CHECK(gamma_profile(kPi / 4.0, p) ==
          doctest::Approx(std::pow(2.0, -0.05)).epsilon(1e-14));
    CHECK(gamma_profile(kPi / 4.0, p) ==
          doctest::Approx(0.96593632892484555).epsilon(1e-14));

    CHECK_THROWS_AS(gamma_profile(0.0, p), std::invalid_argument);
    CHECK_THROWS_AS(gamma_profile(kPi / 2.0, p), std::invalid_argument);
}

TEST_CASE("weight function") {
    CHECK(weight_w(1.0) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(weight_w(0.5) == doctest::Approx(9.0).epsilon(1e-15));
    CHECK(weight_w(1e9) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK_THROWS_AS(weight_w(0.0), std::invalid_argument);
    CHECK_THROWS_AS(weight_w(-1.0), std::invalid_argument);
}

TEST_CASE("steady profile peaks at z = 1 and vanishes toward the axis") {
    Parameters p = make_parameters(0.05, 0.025, 0);
    const double th = 0.7;
    // 4z/(1+z)^2 maximizes at z = 1 with value 1
    CHECK(f_star(1.0, th, p) ==
          doctest::Approx(p.alpha * gamma_profile(th, p) / p.c).epsilon(1e-14));
    for (double z : {0.1, 0.5, 2.0, 10.0})
        CHECK(f_star(z, th, p) < f_star(1.0, th, p));
    // Gamma -> 0 toward the axis (fractional power: slow but monotone)
    CHECK(f_star(1.0, kPi / 2.0 - 1e-15, p) < f_star(1.0, kPi / 2.0 - 1e-6, p));
    CHECK(f_star(1.0, kPi / 2.0 - 1e-6, p) < f_star(1.0, kPi / 4.0, p));
    // base form differs by exactly alpha
    CHECK(f_star(2.0, th, p) ==
          doctest::Approx(p.alpha * f_star_base(2.0, th, p)).epsilon(1e-15));
}

TEST_CASE("cutoff: plateau values, blend midpoint, monotone, C2 seams") {
    CHECK(cutoff_chi(0.4) == 0.0);
    CHECK(cutoff_chi(0.5) == 0.0);
    CHECK(cutoff_chi(2.0) == 1.0);
    CHECK(cutoff_chi(1.0) == 1.0);
    CHECK(cutoff_chi(0.75) == doctest::Approx(0.5).epsilon(1e-15));

    double prev = -1.0;
    for (int i = 0; i <= 100; ++i) {
        double z = 0.4 + 0.7 * i / 100.0;
        double c = cutoff_chi(z);
        CHECK(c >= prev - 1e-15);
        prev = c;
    }
    // first and second derivatives close down to zero at both seams
    for (double z : {0.5 + 1e-6, 1.0 - 1e-6}) {
        CHECK(std::abs(cutoff_chi_dz(z)) < 1e-9);
        CHECK(std::abs(cutoff_chi_dzz(z)) < 1e-2);
    }
    // analytic derivatives match finite differences mid-blend
    for (double z : {0.6, 0.75, 0.9}) {
        double h = 1e-4;
        double fd1 = (cutoff_chi(z + h) - cutoff_chi(z - h)) / (2.0 * h);
        double fd2 = (cutoff_chi(z + h) - 2.0 * cutoff_chi(z) + cutoff_chi(z - h)) / (h * h);
        CHECK(cutoff_chi_dz(z) == doctest::Approx(fd1).epsilon(1e-7));
        CHECK(cutoff_chi_dzz(z) == doctest::Approx(fd2).epsilon(1e-4));
    }
}

TEST_CASE("special-solution angular factor") {
    CHECK(pi_angular(0.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(pi_angular(kPi / 2.0) == doctest::Approx(-2.0 / 3.0).epsilon(1e-15));

    // Sturm-Liouville residual with analytic derivatives, all nodes
    GridPtr g = make_grid(0.01, 1e4, 16, 128);
    for (std::size_t j = 0; j < g->ntheta(); ++j) {
        double t = g->theta(j);
        double resid = -2.0 * std::cos(2.0 * t) + std::tan(t) * std::sin(2.0 * t) +
                       6.0 * pi_angular(t);
        CHECK(std::abs(resid) <= 1e-12);
    }
    // Neumann ends: derivative -sin(2t) vanishes in both limits
    CHECK(std::abs(-std::sin(2.0 * 1e-12)) < 1e-11);
    CHECK(std::abs(-std::sin(2.0 * (kPi / 2.0))) < 1e-11);
}

TEST_CASE("radial Euler kernel of z^beta, analytic derivatives per node") {
    GridPtr g = make_grid(0.01, 1e4, 64, 8);
    for (double a : {0.01, 0.05, 0.1}) {
        Parameters p = make_parameters(a, 0.0, 0);
        for (std::size_t i = 0; i < g->nz(); ++i) {
            double z = g->z(i);
            if (z <= 1.0) continue;
            double b = p.beta;
            double p1 = std::pow(z, b);
            double d1 = b * std::pow(z, b - 1.0);
            double d2 = b * (b - 1.0) * std::pow(z, b - 2.0);
            double resid = a * a * z * z * d2 + a * (5.0 + a) * z * d1 + p1;
            CHECK(std::abs(resid) <= 1e-10 * std::abs(p1));
        }
    }
}

TEST_CASE("decay exponent matches the initial-data rate") {
    // z^beta in rho = z^{1/alpha} coordinates carries exponent alpha*beta,
    // which must equal -(5 - sqrt(21))/2.
    for (double a : {0.01, 0.05, 0.2}) {
        Parameters p = make_parameters(a, 0.0, 0);
        CHECK(std::abs(a * p.beta + (5.0 - std::sqrt(21.0)) / 2.0) < 1e-12);
    }
}

TEST_CASE("special solution field: cutoff region and formula") {
    Parameters p = make_parameters(0.05, 0.025, 0);
    GridPtr g = make_grid(0.01, 1e4, 128, 16);
    SpecialPi sp;
    sp.amplitude = 3.5;
    Field f = special_pi(sp, g, p);

    for (std::size_t i = 0; i < g->nz(); ++i) {
        double z = g->z(i);
        for (std::size_t j = 0; j < g->ntheta(); ++j) {
            double expect = (z <= 0.5)
                                ? 0.0
                                : sp.amplitude * cutoff_chi(z) * std::pow(z, p.beta) *
                                      pi_angular(g->theta(j));
            CHECK(f.at(i, j) == doctest::Approx(expect).epsilon(1e-13));
        }
    }
    CHECK(f.is_finite());
}

TEST_SUITE_END();
