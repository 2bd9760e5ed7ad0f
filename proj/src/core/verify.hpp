#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qtele {

struct VerifyTolerances {
    double oracle = 1e-10;            // engine vs closed-form variances
    double identity = 1e-9;           // Vcv = (1 - T) Vout
    double commutator = 1e-9;         // |commutator norm - 1| and uncertainty slack
    double classical_limit = 1e-12;   // exact classical-teleporter identities
    double quadrature = 1e-10;        // angle-resolved added noise
    double operating_points = 1e-10;  // gain-formula residuals
};

struct VerifyOptions {
    VerifyTolerances tolerances;
    std::uint64_t seed = 12345;   // randomized-sequence suite
    std::size_t sequences = 200;  // random circuits per run
};

struct SuiteResult {
    std::string name;
    bool passed = false;
    std::string detail;  // worst deviations, or the first failure description
};

// Self-check suites exercising the field engine against closed forms and
// structural invariants. Deterministic for a fixed seed.
std::vector<SuiteResult> run_verification(const VerifyOptions& options = {});

bool all_passed(const std::vector<SuiteResult>& results);

}  // namespace qtele
