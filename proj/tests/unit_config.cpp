#include <doctest.h>

#include "enpp/config.hpp"

using namespace enpp;

TEST_SUITE_BEGIN("config");

TEST_CASE("overrides on top of defaults") {
    Config c = parse_config("alpha=0.05\nnz=512\n");
    CHECK(c.alpha == 0.05);
    CHECK(c.nz == 512);
    CHECK(c.ntheta == 128);           // default
    CHECK(c.z_min == 1e-2);           // default
    CHECK(c.resolved_delta() == 0.025);  // alpha/2 when not given
    CHECK(c.pi_mode == Config::PiMode::full);
    CHECK(c.modulation == Config::Modulation::full);
}

TEST_CASE("empty text gives all defaults") {
    Config c = parse_config("");
    Config d = default_config();
    CHECK(c.alpha == d.alpha);
    CHECK(c.nz == d.nz);
    CHECK(c.seed == d.seed);
    CHECK(echo_config(c) == echo_config(d));
}

TEST_CASE("range and syntax errors carry line numbers") {
    CHECK_THROWS_WITH_AS(parse_config("alpha=0.5\n"),
                         doctest::Contains("alpha"), ConfigError);
    try {
        parse_config("alpha=0.05\nbogus_key=3\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.line == 2);
        CHECK(std::string(e.what()).find("unknown key") != std::string::npos);
    }
    try {
        parse_config("alpha=0.05\nnz 512\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.line == 2);
    }
    CHECK_THROWS_AS(parse_config("dt=-1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("nz=4\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("pi_mode=other\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("alpha=abc\n"), ConfigError);
}

TEST_CASE("comments and blank lines are ignored; echo is deterministic") {
    Config a = parse_config("# comment\n\nalpha=0.1\n  delta = 0.03 \n");
    CHECK(a.alpha == 0.1);
    CHECK(a.delta == 0.03);
    CHECK(a.resolved_delta() == 0.03);
    Config b = parse_config("alpha=0.1\ndelta=0.03\n");
    CHECK(echo_config(a) == echo_config(b));
}

TEST_CASE("mode keys parse") {
    Config c = parse_config("pi_mode=special\nmodulation=reduced\n");
    CHECK(c.pi_mode == Config::PiMode::special);
    CHECK(c.modulation == Config::Modulation::reduced);
}

TEST_SUITE_END();
