#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace enpp {

// Experiment configuration. Parsed from newline-delimited key=value text;
// unknown keys are rejected, missing keys take the defaults below.
// delta defaults to alpha/2 when not given explicitly.
struct Config {
    double alpha = 0.05;
    double delta = -1.0;  // sentinel: resolve to alpha/2 after parsing
    int k = 0;
    double z_min = 1e-2;
    double z_max = 1e4;
    std::size_t nz = 512;
    std::size_t ntheta = 128;
    double dt = 0.005;
    double s_max = 5.0;
    double eps0_amplitude = 0.0;
    double pi0_amplitude = 0.0;
    // When nu > 0 the initial amplitudes are derived from the energy budget
    // E(0) = nu * alpha^{3/2}, split evenly between the two blocks; explicit
    // amplitudes are used only for nu = 0.
    double nu = 0.01;
    std::uint64_t seed = 20240913;
    enum class PiMode { full, special } pi_mode = PiMode::full;
    enum class Modulation { full, reduced } modulation = Modulation::full;

    double resolved_delta() const { return delta >= 0.0 ? delta : alpha / 2.0; }
};

struct ConfigError : std::runtime_error {
    int line;
    ConfigError(int line_, const std::string& what)
        : std::runtime_error("config line " + std::to_string(line_) + ": " + what),
          line(line_) {}
};

Config parse_config(const std::string& text);
Config default_config();

// Deterministic key=value echo of the effective configuration.
std::string echo_config(const Config& c);

} // namespace enpp
