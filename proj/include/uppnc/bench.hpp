#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "uppnc/io.hpp"

namespace uppnc {

/// The configurations disagreed on the result. Maps to exit code 5.
class BenchmarkMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct BenchConfiguration {
    std::string name;
    bool optimized;
    bool parallel;
};

struct ConfigurationTiming {
    std::string name;
    std::vector<double> samplesMs;
    double q1 = 0, q2 = 0, q3 = 0;
};

struct BenchReport {
    std::string caseName;
    int runs = 0;
    std::vector<ConfigurationTiming> configurations;

    const ConfigurationTiming& timing(const std::string& name) const;
};

/// standard/optimized crossed with sequential/parallel. Standard is the
/// generic convolution with every shortcut off; optimized goes through
/// dispatchConvolution.
const std::vector<BenchConfiguration>& benchConfigurations();
std::vector<std::string> benchCaseNames();

/// Quartile by linear interpolation between closest ranks.
double quantile(std::vector<double> samples, double q);

struct BenchOptions {
    int runs = 10;
    /// One discarded run per configuration before measuring.
    bool warmup = true;
    std::optional<unsigned> workers;
};

/// Times every configuration on a registered case. Throws BenchmarkMismatch
/// when the four results are not equivalent, std::invalid_argument for an
/// unknown case or fewer than 3 runs.
BenchReport runBenchmark(const std::string& caseName, const BenchOptions& options = {});

Json benchReportToJson(const BenchReport& report);

}  // namespace uppnc
