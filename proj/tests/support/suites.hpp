#pragma once

// Randomized suites shared by the unit tests and the acceptance report.

#include <cstdint>
#include <string>
#include <vector>

namespace uppnc::testing {

struct SuiteResult {
    std::string name;
    int cases = 0;
    int failures = 0;
    std::string firstFailure;

    bool ok() const { return cases > 0 && failures == 0; }
    void fail(const std::string& what) {
        if (failures++ == 0) firstFailure = what;
    }
};

/// Library convolution against the candidate-point oracle on a grid.
SuiteResult convolutionOracleSuite(int pairs, std::uint64_t seed);
SuiteResult maxPlusConvolutionOracleSuite(int pairs, std::uint64_t seed);
SuiteResult deconvolutionOracleSuite(int pairs, std::uint64_t seed);

/// One result per algebraic law, each over `curves` random inputs.
std::vector<SuiteResult> algebraicLawSuites(int curves, std::uint64_t seed);

/// Serialized results with parallelism forced on against parallelism off.
SuiteResult determinismSuite(int inputs, std::uint64_t seed);

/// serialize, parse, compare.
SuiteResult roundTripSuite(int curves, std::uint64_t seed);

}  // namespace uppnc::testing
