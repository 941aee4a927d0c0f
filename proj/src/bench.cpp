#include "uppnc/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>

#include "uppnc/binary.hpp"
#include "uppnc/families.hpp"

namespace uppnc {

namespace {

struct BenchCase {
    std::function<Curve()> left;
    std::function<Curve()> right;
};

const std::map<std::string, BenchCase>& benchCases() {
    static const std::map<std::string, BenchCase> cases{
        {"subadditive-conv",
         {[] { return flowControl(416, 835, 313); }, [] { return flowControl(552, 571, 970); }}},
        {"trivial", {[] { return rateLatency(3, 2); }, [] { return rateLatency(5, 1); }}},
    };
    return cases;
}

}  // namespace

const ConfigurationTiming& BenchReport::timing(const std::string& name) const {
    for (const auto& c : configurations)
        if (c.name == name) return c;
    throw std::out_of_range("no configuration named " + name);
}

const std::vector<BenchConfiguration>& benchConfigurations() {
    static const std::vector<BenchConfiguration> configurations{
        {"standard-sequential", false, false},
        {"standard-parallel", false, true},
        {"optimized-sequential", true, false},
        {"optimized-parallel", true, true},
    };
    return configurations;
}

std::vector<std::string> benchCaseNames() {
    std::vector<std::string> names;
    for (const auto& [name, _] : benchCases()) names.push_back(name);
    return names;
}

double quantile(std::vector<double> samples, double q) {
    if (samples.empty()) throw std::invalid_argument("quantile of an empty sample");
    std::sort(samples.begin(), samples.end());
    double rank = q * static_cast<double>(samples.size() - 1);
    auto low = static_cast<std::size_t>(std::floor(rank));
    std::size_t high = std::min(low + 1, samples.size() - 1);
    return samples[low] + (rank - static_cast<double>(low)) * (samples[high] - samples[low]);
}

BenchReport runBenchmark(const std::string& caseName, const BenchOptions& options) {
    auto found = benchCases().find(caseName);
    if (found == benchCases().end()) throw std::invalid_argument("unknown benchmark case \"" + caseName + "\"");
    if (options.runs < 3) throw std::invalid_argument("a benchmark needs at least 3 runs");

    // Operands are built outside the timed region.
    const Curve f = found->second.left();
    const Curve g = found->second.right();

    BenchReport report;
    report.caseName = caseName;
    report.runs = options.runs;
    std::vector<Curve> results;
    for (const auto& config : benchConfigurations()) {
        ComputationSettings settings;
        settings.useParallelism = config.parallel;
        settings.useFastPaths = config.optimized;
        settings.workerCount = options.workers;
        auto run = [&] {
            return config.optimized ? dispatchConvolution(f, g, settings) : convolution(f, g, settings);
        };
        if (options.warmup) run();

        ConfigurationTiming timing;
        timing.name = config.name;
        std::optional<Curve> last;
        for (int i = 0; i < options.runs; ++i) {
            auto start = std::chrono::steady_clock::now();
            Curve r = run();
            auto stop = std::chrono::steady_clock::now();
            timing.samplesMs.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
            last = std::move(r);
        }
        timing.q1 = quantile(timing.samplesMs, 0.25);
        timing.q2 = quantile(timing.samplesMs, 0.5);
        timing.q3 = quantile(timing.samplesMs, 0.75);
        report.configurations.push_back(std::move(timing));
        results.push_back(std::move(*last));
    }

    for (std::size_t i = 1; i < results.size(); ++i)
        if (!equivalent(results[0], results[i]))
            throw BenchmarkMismatch(caseName + ": " + benchConfigurations()[i].name + " disagrees with " +
                                    benchConfigurations()[0].name);
    return report;
}

Json benchReportToJson(const BenchReport& report) {
    Json configurations = Json::array();
    for (const auto& c : report.configurations)
        configurations.push_back(
            {{"name", c.name}, {"q1Ms", c.q1}, {"q2Ms", c.q2}, {"q3Ms", c.q3}, {"samplesMs", c.samplesMs}});
    return Json{{"case", report.caseName},
                {"runs", report.runs},
                {"equivalent", true},
                {"configurations", configurations}};
}

}  // namespace uppnc
