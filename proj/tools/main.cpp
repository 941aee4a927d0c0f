#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "uppnc/bench.hpp"
#include "uppnc/io.hpp"
#include "uppnc/properties.hpp"

using namespace uppnc;

namespace {

enum ExitCode {
    Ok = 0,
    CheckFalse = 1,
    ParseFailure = 2,
    Unresolved = 3,
    DomainFailure = 4,
    BenchMismatch = 5,
};

struct Options {
    std::string defs;
    std::string expr;
    std::string out;
    std::string curveFile;
    std::string until;
    std::string format = "csv";
    std::string property;
    std::string caseName;
    int runs = 10;
    bool sequential = false;
    std::optional<unsigned> workers;
};

ComputationSettings settingsFrom(const Options& o) {
    ComputationSettings s;
    s.useParallelism = !o.sequential;
    s.workerCount = o.workers;
    return s;
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(out);
    if (!file) throw ParseError("cannot write " + out);
    file << text;
}

/// The curve a plot or check works on: a curve file, or an expression over
/// a definitions file.
Curve loadCurve(const Options& o) {
    if (!o.curveFile.empty()) return curveFromJson(readJsonFile(o.curveFile));
    if (o.expr.empty()) throw ParseError("give a curve file, or --expr (with --defs)");
    Evaluator evaluator(o.defs.empty() ? Json::object() : readJsonFile(o.defs), settingsFrom(o));
    Value v = evaluator.evaluate(readJsonFile(o.expr));
    if (auto* c = std::get_if<Curve>(&v)) return *c;
    throw ParseError("the expression does not evaluate to a curve");
}

int runEval(const Options& o) {
    Evaluator evaluator(o.defs.empty() ? Json::object() : readJsonFile(o.defs), settingsFrom(o));
    Value v = evaluator.evaluate(readJsonFile(o.expr));
    if (const auto* r = std::get_if<Rational>(&v)) {
        std::cout << r->toFractionString() << "\n";
        if (!o.out.empty()) emit(valueToJson(v).dump() + "\n", o.out);
        return Ok;
    }
    emit(valueToJson(v).dump(2) + "\n", o.out);
    return Ok;
}

std::string csvField(const std::optional<Rational>& r) { return r ? r->toString() : ""; }

int runPlot(const Options& o) {
    if (o.format != "csv") throw ParseError("unsupported plot format \"" + o.format + "\"");
    Rational until;
    try {
        until = Rational::parse(o.until);
    } catch (const std::exception&) {
        throw ParseError("invalid horizon \"" + o.until + "\"");
    }
    if (!until.isFinite() || until.sign() <= 0) throw ParseError("the horizon must be a positive finite rational");

    Curve c = loadCurve(o);
    Sequence window = c.extend(until);
    std::vector<Rational> times;
    for (std::size_t k = 0; k < window.pointCount(); ++k) times.push_back(window.pointAt(k).time);
    times.push_back(until);

    std::ostringstream csv;
    csv << "t,leftLimit,value,rightLimit,valueDecimal\n";
    for (const auto& t : times) {
        std::optional<Rational> left;
        if (t.sign() > 0) left = c.leftLimitAt(t);
        Rational value = c.valueAt(t);
        csv << t.toString() << ',' << csvField(left) << ',' << value.toString() << ','
            << c.rightLimitAt(t).toString() << ',' << value.toDecimalString(10) << '\n';
    }
    emit(csv.str(), o.out);
    return Ok;
}

int runCheck(const Options& o) {
    static const std::map<std::string, std::function<bool(const Curve&, const ComputationSettings&)>> properties{
        {"continuous", [](const Curve& f, const ComputationSettings&) { return isContinuous(f); }},
        {"leftContinuous", [](const Curve& f, const ComputationSettings&) { return isLeftContinuous(f); }},
        {"rightContinuous", [](const Curve& f, const ComputationSettings&) { return isRightContinuous(f); }},
        {"nonDecreasing", [](const Curve& f, const ComputationSettings&) { return isNonDecreasing(f); }},
        {"nonNegative", [](const Curve& f, const ComputationSettings&) { return isNonNegative(f); }},
        {"convex", [](const Curve& f, const ComputationSettings&) { return isConvex(f); }},
        {"concave", [](const Curve& f, const ComputationSettings&) { return isConcave(f); }},
        {"subAdditive", [](const Curve& f, const ComputationSettings& s) { return isSubAdditive(f, s); }},
        {"superAdditive", [](const Curve& f, const ComputationSettings& s) { return isSuperAdditive(f, s); }},
    };
    auto it = properties.find(o.property);
    if (it == properties.end()) {
        std::cerr << "unknown property \"" << o.property << "\"; known:";
        for (const auto& [name, _] : properties) std::cerr << ' ' << name;
        std::cerr << "\n";
        return ParseFailure;
    }
    bool holds = it->second(loadCurve(o), settingsFrom(o));
    std::cout << (holds ? "true" : "false") << "\n";
    return holds ? Ok : CheckFalse;
}

int runBench(const Options& o) {
    BenchOptions options;
    options.runs = o.runs;
    options.workers = o.workers;
    BenchReport report;
    try {
        report = runBenchmark(o.caseName, options);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    for (const auto& c : report.configurations)
        std::cerr << c.name << ": Q1 " << c.q1 << " ms, Q2 " << c.q2 << " ms, Q3 " << c.q3 << " ms\n";
    emit(benchReportToJson(report).dump(2) + "\n", o.out);
    return Ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact min-plus and max-plus algebra on ultimately pseudo-periodic curves"};
    app.require_subcommand(1);
    Options o;
    auto settingsFlags = [&](CLI::App* sub) {
        sub->add_flag("--sequential", o.sequential, "Disable internal parallelism");
        sub->add_option("--workers", o.workers, "Worker thread count")->check(CLI::PositiveNumber);
    };

    auto* eval = app.add_subcommand("eval", "Evaluate an expression over named curves");
    eval->add_option("--defs", o.defs, "JSON object of named curves or expressions")->check(CLI::ExistingFile);
    eval->add_option("--expr", o.expr, "JSON expression tree")->required()->check(CLI::ExistingFile);
    eval->add_option("--out", o.out, "Output file (default: stdout)");
    settingsFlags(eval);

    auto* plot = app.add_subcommand("plot", "Sample a curve at its breakpoints as CSV");
    plot->add_option("curve-file", o.curveFile, "Curve JSON")->check(CLI::ExistingFile);
    plot->add_option("--defs", o.defs, "Definitions, when plotting an expression")->check(CLI::ExistingFile);
    plot->add_option("--expr", o.expr, "Expression to plot instead of a curve file")->check(CLI::ExistingFile);
    plot->add_option("--until", o.until, "Horizon (rational)")->required();
    plot->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv"}));
    plot->add_option("--out", o.out, "Output file (default: stdout)");
    settingsFlags(plot);

    auto* check = app.add_subcommand("check", "Test a curve property; exit 0 if it holds, 1 otherwise");
    check->add_option("curve-file", o.curveFile, "Curve JSON")->check(CLI::ExistingFile);
    check->add_option("--defs", o.defs, "Definitions, when checking an expression")->check(CLI::ExistingFile);
    check->add_option("--expr", o.expr, "Expression to check instead of a curve file")->check(CLI::ExistingFile);
    check->add_option("--property", o.property, "Property name, e.g. subAdditive")->required();
    settingsFlags(check);

    auto* bench = app.add_subcommand("bench", "Time standard/optimized x sequential/parallel convolution");
    bench->add_option("--case", o.caseName, "Benchmark case")->required()->check(CLI::IsMember(benchCaseNames()));
    bench->add_option("--runs", o.runs, "Measured runs per configuration (>= 3)")->check(CLI::Range(3, 1000));
    bench->add_option("--out", o.out, "Report file (default: stdout)");
    bench->add_option("--workers", o.workers, "Worker thread count for the parallel configurations")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return ParseFailure;
    }

    try {
        if (*eval) return runEval(o);
        if (*plot) return runPlot(o);
        if (*check) return runCheck(o);
        if (*bench) return runBench(o);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return ParseFailure;
    } catch (const Json::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return ParseFailure;
    } catch (const UnresolvedReference& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Unresolved;
    } catch (const EvaluationError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return DomainFailure;
    } catch (const BenchmarkMismatch& e) {
        std::cerr << "benchmark configurations disagree: " << e.what() << "\n";
        return BenchMismatch;
    } catch (const std::logic_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return DomainFailure;
    }
    return ParseFailure;
}
