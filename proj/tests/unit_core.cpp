#include <cmath>

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "enpp/field.hpp"
#include "enpp/grid.hpp"
#include "enpp/params.hpp"
#include "enpp/profiles.hpp"

using namespace enpp;

TEST_SUITE_BEGIN("core");

TEST_CASE("parameters: formulas and ranges") {
    Parameters p = make_parameters(0.1, 0.05, 0);
    CHECK(p.gamma == doctest::Approx(1.01).epsilon(1e-15));
    CHECK(p.eta == 0.99);

    // beta at alpha = 0.05: (sqrt(21) - 5) / 0.1
    Parameters p5 = make_parameters(0.05, 0.025, 0);
    CHECK(p5.beta == doctest::Approx(-4.1742430504415999).epsilon(1e-12));

    CHECK_THROWS_AS(make_parameters(0.0, 0.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_parameters(0.5, 0.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_parameters(0.1, -0.1, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_parameters(0.1, 0.0, -1), std::invalid_argument);
}

TEST_CASE("parameters: alpha*beta is alpha-independent") {
    const double target = (std::sqrt(21.0) - 5.0) / 2.0;
    for (double a : {0.01, 0.05, 0.1, 0.2}) {
        Parameters p = make_parameters(a, 0.0, 0);
        CHECK(std::abs(a * p.beta - target) < 1e-12);
        CHECK(p.beta < 0.0);
    }
}

TEST_CASE("parameters: c against the closed form") {
    // Oracle: c = (3/2) B(1 + a/6, 3/2 + a/3) via lgamma.
    for (double a : {1e-6, 0.01, 0.05, 0.1, 0.2}) {
        Parameters p = make_parameters(a, 0.0, 0);
        double closed = 1.5 * std::exp(std::lgamma(1.0 + a / 6.0) +
                                       std::lgamma(1.5 + a / 3.0) -
                                       std::lgamma(2.5 + a / 2.0));
        CHECK(p.c == doctest::Approx(closed).epsilon(1e-11));
        CHECK(p.c > 0.0);
    }
    // c -> 1 as alpha -> 0  (antiderivative of 3 sin cos^2 is -cos^3)
    Parameters tiny = make_parameters(1e-6, 0.0, 0);
    CHECK(std::abs(tiny.c - 1.0) < 1e-5);
}

TEST_CASE("parameters: deterministic") {
    Parameters a = make_parameters(0.07, 0.03, 1);
    Parameters b = make_parameters(0.07, 0.03, 1);
    CHECK(a.c == b.c);
    CHECK(a.beta == b.beta);
    CHECK(a.gamma == b.gamma);
}

TEST_CASE("grid: geometric nodes match the log-spacing formula") {
    // four nodes over [0.01, 100]: ratio 10^{4/3} (raw constructor; the
    // factory enforces nz >= 8 for the operator stencils)
    auto g = std::make_shared<Grid>(0.01, 100.0, 4, 8);
    CHECK(g->z(0) == doctest::Approx(0.01).epsilon(1e-14));
    CHECK(g->z(1) == doctest::Approx(0.21544346900318837).epsilon(1e-12));
    CHECK(g->z(2) == doctest::Approx(4.6415888336127775).epsilon(1e-12));
    CHECK(g->z(3) == doctest::Approx(100.0).epsilon(1e-14));

    CHECK_THROWS_AS(make_grid(2.0, 1.0, 16, 16), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(-1.0, 10.0, 16, 16), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(0.01, 100.0, 4, 4), std::invalid_argument);
}

TEST_CASE("grid: theta quadrature exactness") {
    GridPtr g = make_grid(0.01, 1e4, 16, 128);
    const double pi = 4.0 * std::atan(1.0);

    double s1 = 0.0, s2 = 0.0, sK = 0.0;
    for (std::size_t j = 0; j < g->ntheta(); ++j) {
        s1 += g->theta_weight(j);
        s2 += g->theta_weight(j) * std::sin(2.0 * g->theta(j));
        sK += g->theta_weight(j) * k_profile(g->theta(j));
        CHECK(g->theta(j) > 0.0);
        CHECK(g->theta(j) < pi / 2.0);
    }
    CHECK(std::abs(s1 - pi / 2.0) / (pi / 2.0) < 1e-12);
    CHECK(std::abs(s2 - 1.0) < 1e-10);
    CHECK(std::abs(sK - 1.0) < 1e-10);
}

TEST_CASE("grid: z quadrature of 1/z^2 and refinement gain") {
    auto err_at = [](std::size_t nz) {
        GridPtr g = make_grid(0.9999999999e0, 100.0, nz, 8);
        // integrate on [1, 100]: use a grid starting at 1
        GridPtr g2 = std::make_shared<Grid>(1.0, 100.0, nz, 8);
        RadialFunction f(g2);
        for (std::size_t i = 0; i < nz; ++i) f.v[i] = 1.0 / (g2->z(i) * g2->z(i));
        return std::abs(integrate_z(f) - 0.99);
    };
    double e512 = err_at(512);
    CHECK(e512 < 1e-4);
    double e1024 = err_at(1024);
    CHECK(e512 / e1024 >= 3.5);  // order >= 2
}

TEST_CASE("field: zero integral and grid identity") {
    GridPtr g = make_grid(0.01, 1e4, 32, 16);
    RadialFunction zero(g);
    CHECK(integrate_z(zero) == 0.0);

    Field a(g), b(g);
    CHECK_NOTHROW(a += b);
    GridPtr g2 = make_grid(0.01, 1e4, 32, 16);
    Field c(g2);
    CHECK_THROWS_AS(a += c, std::invalid_argument);  // same shape, different grid object
}

TEST_CASE("field: integrate_theta of K is 1 at every node") {
    GridPtr g = make_grid(0.01, 1e4, 16, 96);
    Field f = sample(g, [](double, double t) { return k_profile(t); });
    RadialFunction r = integrate_theta(f);
    for (std::size_t i = 0; i < g->nz(); ++i)
        CHECK(std::abs(r.v[i] - 1.0) < 1e-10);
}

TEST_SUITE_END();
