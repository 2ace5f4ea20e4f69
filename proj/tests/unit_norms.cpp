#include <cmath>

#include <doctest.h>

#include "enpp/elliptic.hpp"
#include "enpp/norms.hpp"
#include "enpp/profiles.hpp"
#include "enpp/testfields.hpp"

using namespace enpp;

TEST_SUITE_BEGIN("norms");

TEST_CASE("weighted inner product: separable oracle, zero, symmetry") {
    Parameters p = make_parameters(0.05, 0.025, 0);
    GridPtr g = make_grid(1e-2, 1e4, 512, 128);

    // f = g = z^2/(1+z)^3, theta-independent: the double integral factors
    // into  int (z^2/(1+z)^3 w)^2 dz  *  int sin(2t)^{-eta} dt.
    Field f = sample(g, [](double z, double) {
        return z * z / std::pow(1.0 + z, 3);
    });
    double measured = weighted_l2(f, f, p.eta);

    // independent 1-D oracles: fine trapezoid in log z, Gauss in theta
    double zfac = 0.0;
    {
        const std::size_t n = 20000;
        double t0 = std::log(1e-2), t1 = std::log(1e4), h = (t1 - t0) / double(n - 1);
        for (std::size_t i = 0; i < n; ++i) {
            double t = t0 + h * double(i);
            double z = std::exp(t);
            double val = z * z / std::pow(1.0 + z, 3) * weight_w(z);
            double wq = (i == 0 || i == n - 1) ? 0.5 * h : h;
            zfac += wq * z * val * val;  // dz = z dt
        }
    }
    // theta factor with the grid's own rule: the integrand sin(2t)^{-eta}
    // barely integrates (eta = 0.99), so absolute quadrature convergence in
    // ntheta is very slow; the tensor factorization itself is exact, which
    // is what this oracle pins down.
    double tfac = 0.0;
    for (std::size_t j = 0; j < g->ntheta(); ++j)
        tfac += g->theta_weight(j) * std::pow(std::sin(2.0 * g->theta(j)), -p.eta);
    CHECK(measured == doctest::Approx(zfac * tfac).epsilon(1e-5));

    Field zero(g);
    CHECK(weighted_l2(zero, zero, p.eta) == 0.0);

    Field a = random_test_field(g, 31), b = random_test_field(g, 32);
    CHECK(weighted_l2(a, b, p.gamma) == weighted_l2(b, a, p.gamma));  // bit-exact
}

TEST_CASE("Cauchy-Schwarz on random pairs") {
    Parameters p = make_parameters(0.05, 0.025, 0);
    GridPtr g = make_grid(1e-2, 1e4, 128, 48);
    for (std::uint64_t s = 0; s < 10; ++s) {
        Field a = random_test_field(g, 100 + s), b = random_test_field(g, 200 + s);
        double ab = weighted_l2(a, b, p.eta);
        double aa = weighted_l2(a, a, p.eta), bb = weighted_l2(b, b, p.eta);
        CHECK(ab * ab <= aa * bb * (1.0 + 1e-12));
    }
}

TEST_CASE("Sobolev norm: k=0 reduction, homogeneity, monotonicity in k") {
    GridPtr g = make_grid(1e-2, 1e4, 192, 64);
    Field f = random_test_field(g, 77);

    Parameters p0 = make_parameters(0.05, 0.025, 0);
    NormBreakdown n0 = h_k_norm(f, p0);
    CHECK(n0.terms.size() == 1);
    CHECK(n0.total_sq == doctest::Approx(weighted_l2(f, f, p0.eta)).epsilon(1e-14));

    Field f3 = f;
    f3 *= -3.0;
    CHECK(h_k_norm(f3, p0).norm() == doctest::Approx(3.0 * n0.norm()).epsilon(1e-12));

    Parameters p1 = make_parameters(0.05, 0.025, 1);
    Parameters p2 = make_parameters(0.05, 0.025, 2);
    double t0 = n0.total_sq, t1 = h_k_norm(f, p1).total_sq, t2 = h_k_norm(f, p2).total_sq;
    CHECK(t1 >= t0);
    CHECK(t2 >= t1);
    // k=1 has exactly three contributions: Dz^0, Dz^1 (eta), Dtheta (gamma)
    CHECK(h_k_norm(f, p1).terms.size() == 3);
}

TEST_CASE("norm terms stay finite for the admissible family") {
    Parameters p = make_parameters(0.05, 0.025, 2);
    GridPtr g = make_grid(1e-2, 1e4, 192, 64);
    for (std::uint64_t s = 0; s < 5; ++s) {
        Field f = random_test_field(g, 300 + s);
        NormBreakdown nb = h_k_norm(f, p);
        for (const auto& [name, val] : nb.terms) {
            CHECK(std::isfinite(val));
            CHECK(val >= 0.0);
        }
    }
}

TEST_CASE("non-finite contribution reports the offending term") {
    Parameters p = make_parameters(0.05, 0.025, 0);
    GridPtr g = make_grid(1e-2, 1e4, 32, 16);
    Field f(g);
    f.v[5] = std::numeric_limits<double>::infinity();
    CHECK_THROWS_WITH_AS(h_k_norm(f, p), doctest::Contains("Dz^0"), std::runtime_error);
}

TEST_CASE("special-solution norm is linear in the amplitude") {
    Parameters p = make_parameters(0.05, 0.025, 0);
    GridPtr g = make_grid(1e-2, 1e4, 256, 64);
    SpecialPi s1;
    s1.amplitude = 1.0;
    SpecialPi s2;
    s2.amplitude = 7.25;
    double n1 = h_k_norm(special_pi(s1, g, p), p).norm();
    double n2 = h_k_norm(special_pi(s2, g, p), p).norm();
    CHECK(n2 / n1 == doctest::Approx(7.25).epsilon(1e-12));
}

TEST_CASE("energy: zero, special-solution normalization, additivity") {
    Parameters p = make_parameters(0.05, 0.025, 0);
    GridPtr g = make_grid(1e-2, 1e4, 192, 48);
    Field zero(g);
    CHECK(energy(zero, zero, p) == 0.0);

    // the charge block is normalized so a pure special-solution state of
    // amplitude a carries energy a^2
    const double a = 0.37;
    SpecialPi sp;
    sp.amplitude = a;
    Field G = apply_potential_operator(special_pi(sp, g, p), p);
    CHECK(energy(zero, G, p) == doctest::Approx(a * a).epsilon(1e-8));

    Field eps = random_test_field(g, 55);
    double e_both = energy(eps, G, p);
    double e_eps = energy(eps, zero, p);
    double e_g = energy(zero, G, p);
    CHECK(e_both == doctest::Approx(e_eps + e_g).epsilon(1e-12));
}

TEST_SUITE_END();
