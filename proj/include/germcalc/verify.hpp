#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace germcalc {

struct VerifyOptions {
    int order = 10;
    std::uint64_t seed = 42;
};

struct SuiteResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct VerifyReport {
    VerifyOptions options;
    std::vector<SuiteResult> suites;
    bool all_passed = false;
};

/// Runs every invariant suite at the given order and seed. The suites cover
/// the exact algebra end to end: ring axioms, exp/log round trips, generator
/// structure, first integrals and transports, the lambda degree bound, both
/// homological routes, the Hilbert reconstruction, and the divergence
/// evidence. Deterministic: identical options produce an identical report.
VerifyReport run_verification(const VerifyOptions& options);

/// One line per suite plus a summary; byte-stable for a given report.
std::string format_report(const VerifyReport& report);

} // namespace germcalc
