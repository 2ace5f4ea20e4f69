#include "enpp/io.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "enpp/dynamics.hpp"
#include "enpp/verify.hpp"

namespace enpp {

std::string format_full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_series_csv(const std::string& path, const SimulationReport& rep) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "s,lambda,mu,energy,eps_norm,G_norm,LK0\n";
    for (std::size_t i = 0; i < rep.s.size(); ++i) {
        out << format_full(rep.s[i]) << ',' << format_full(rep.lambda[i]) << ','
            << format_full(rep.mu[i]) << ',' << format_full(rep.energy[i]) << ','
            << format_full(rep.eps_norm[i]) << ',' << format_full(rep.G_norm[i]) << ','
            << format_full(rep.lk0[i]) << '\n';
    }
}

void write_verification_csv(const std::string& path, const VerificationSuiteResult& res) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "name,residual,tolerance,pass,order\n";
    for (const auto& r : res.rows) {
        out << r.name << ',' << format_full(r.residual) << ',' << format_full(r.tolerance)
            << ',' << (r.pass ? 1 : 0) << ','
            << (r.has_order ? format_full(r.order) : "") << '\n';
    }
}

std::string verification_table(const VerificationSuiteResult& res) {
    std::ostringstream os;
    os << std::left << std::setw(36) << "identity" << std::right << std::setw(13)
       << "residual" << std::setw(13) << "tolerance" << std::setw(9) << "order"
       << "  status\n";
    os << std::string(80, '-') << '\n';
    for (const auto& r : res.rows) {
        os << std::left << std::setw(36) << r.name << std::right << std::scientific
           << std::setprecision(3) << std::setw(13) << r.residual << std::setw(13)
           << r.tolerance;
        if (r.has_order)
            os << std::fixed << std::setprecision(2) << std::setw(9) << r.order;
        else
            os << std::setw(9) << "-";
        os << "  " << (r.pass ? "pass" : (r.waived ? "FAIL (waived)" : "FAIL"));
        if (!r.note.empty()) os << "\n" << std::setw(38) << ' ' << "note: " << r.note;
        os << '\n';
    }
    os << std::string(80, '-') << '\n';
    os << (res.all_pass() ? "all checks passed" : "CHECKS FAILED") << '\n';
    return os.str();
}

} // namespace enpp
