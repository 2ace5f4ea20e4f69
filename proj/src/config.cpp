#include "enpp/config.hpp"

#include <cerrno>
#include <cstdlib>
#include <sstream>

namespace enpp {

namespace {

double parse_double(const std::string& s, int line) {
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0' || errno == ERANGE)
        throw ConfigError(line, "malformed numeric value '" + s + "'");
    return v;
}

long parse_long(const std::string& s, int line) {
    errno = 0;
    char* end = nullptr;
    long v = std::strtol(s.c_str(), &end, 10);
    if (end == s.c_str() || *end != '\0' || errno == ERANGE)
        throw ConfigError(line, "malformed integer value '" + s + "'");
    return v;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

void validate(const Config& c) {
    auto oops = [](const std::string& m) { throw ConfigError(0, m); };
    if (!(c.alpha > 0.0) || c.alpha > 0.2) oops("alpha must lie in (0, 0.2]");
    if (c.delta >= 0.0 && c.delta >= 1.0) oops("delta must lie in [0, 1)");
    if (c.k < 0) oops("k must be >= 0");
    if (!(c.z_min > 0.0) || !(c.z_min < 1.0)) oops("z_min must lie in (0, 1)");
    if (!(c.z_max > 1.0)) oops("z_max must exceed 1");
    if (c.nz < 8 || c.ntheta < 8) oops("nz and ntheta must be >= 8");
    if (!(c.dt > 0.0)) oops("dt must be positive");
    if (!(c.s_max > 0.0)) oops("s_max must be positive");
    if (c.eps0_amplitude < 0.0 || c.pi0_amplitude < 0.0) oops("amplitudes must be >= 0");
    if (c.nu < 0.0) oops("nu must be >= 0");
}

} // namespace

Config default_config() { return Config{}; }

Config parse_config(const std::string& text) {
    Config c;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(lineno, "expected key=value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError(lineno, "expected key=value");

        if (key == "alpha") c.alpha = parse_double(val, lineno);
        else if (key == "delta") c.delta = parse_double(val, lineno);
        else if (key == "k") c.k = int(parse_long(val, lineno));
        else if (key == "z_min") c.z_min = parse_double(val, lineno);
        else if (key == "z_max") c.z_max = parse_double(val, lineno);
        else if (key == "nz") c.nz = std::size_t(parse_long(val, lineno));
        else if (key == "ntheta") c.ntheta = std::size_t(parse_long(val, lineno));
        else if (key == "dt") c.dt = parse_double(val, lineno);
        else if (key == "s_max") c.s_max = parse_double(val, lineno);
        else if (key == "eps0_amplitude") c.eps0_amplitude = parse_double(val, lineno);
        else if (key == "pi0_amplitude") c.pi0_amplitude = parse_double(val, lineno);
        else if (key == "nu") c.nu = parse_double(val, lineno);
        else if (key == "seed") c.seed = std::uint64_t(parse_long(val, lineno));
        else if (key == "pi_mode") {
            if (val == "full") c.pi_mode = Config::PiMode::full;
            else if (val == "special") c.pi_mode = Config::PiMode::special;
            else throw ConfigError(lineno, "pi_mode must be 'full' or 'special'");
        } else if (key == "modulation") {
            if (val == "full") c.modulation = Config::Modulation::full;
            else if (val == "reduced") c.modulation = Config::Modulation::reduced;
            else throw ConfigError(lineno, "modulation must be 'full' or 'reduced'");
        } else {
            throw ConfigError(lineno, "unknown key '" + key + "'");
        }
    }
    validate(c);
    return c;
}

std::string echo_config(const Config& c) {
    std::ostringstream os;
    char buf[64];
    auto put = [&](const char* key, double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        os << key << "=" << buf << "\n";
    };
    put("alpha", c.alpha);
    put("delta", c.resolved_delta());
    os << "k=" << c.k << "\n";
    put("z_min", c.z_min);
    put("z_max", c.z_max);
    os << "nz=" << c.nz << "\n";
    os << "ntheta=" << c.ntheta << "\n";
    put("dt", c.dt);
    put("s_max", c.s_max);
    put("eps0_amplitude", c.eps0_amplitude);
    put("pi0_amplitude", c.pi0_amplitude);
    put("nu", c.nu);
    os << "seed=" << c.seed << "\n";
    os << "pi_mode=" << (c.pi_mode == Config::PiMode::full ? "full" : "special") << "\n";
    os << "modulation="
       << (c.modulation == Config::Modulation::full ? "full" : "reduced") << "\n";
    return os.str();
}

} // namespace enpp
