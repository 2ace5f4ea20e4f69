#pragma once

#include <string>
#include <vector>

namespace enpp {

struct SimulationReport;
struct VerificationSuiteResult;

// All numeric output is written with 17 significant digits so 64-bit floats
// round-trip exactly and identical configs give byte-identical files.
std::string format_full(double v);

void write_series_csv(const std::string& path, const SimulationReport& report);
void write_verification_csv(const std::string& path, const VerificationSuiteResult& result);
std::string verification_table(const VerificationSuiteResult& result);

} // namespace enpp
