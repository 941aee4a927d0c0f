#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <variant>

#include <json.hpp>

#include "uppnc/parallel.hpp"

namespace uppnc {

using Json = nlohmann::json;

/// Malformed input: bad JSON, unknown field, wrong arity. Maps to exit code 2.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A {"ref": name} node with no matching definition. Maps to exit code 3.
class UnresolvedReference : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An algebra operation rejected its operands. Maps to exit code 4.
class EvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Json rationalToJson(const Rational& r);
Rational rationalFromJson(const Json& j);

Json elementToJson(const Element& e);
Element elementFromJson(const Json& j);
Json sequenceToJson(const Sequence& s);
Sequence sequenceFromJson(const Json& j);

/// Always written as a minimized "generic" curve, so equal functions give
/// byte-identical output.
Json curveToJson(const Curve& c);
/// Accepts "generic" curves and every family type with its named parameters.
Curve curveFromJson(const Json& j);

/// Result of evaluating an expression: a curve, a scalar (deviations) or a
/// sequence (cut).
using Value = std::variant<Curve, Rational, Sequence>;

/// Curve-valued results as curve JSON, sequences as element arrays, and
/// scalars as "p/q" strings.
Json valueToJson(const Value& v);

/// Evaluates expression trees against a set of named definitions. A
/// definition is either a curve or an expression over earlier names.
class Evaluator {
public:
    explicit Evaluator(Json definitions, ComputationSettings settings = {});

    Value evaluate(const Json& expression);
    /// Resolves a definition by name, evaluating it on first use.
    const Value& resolve(const std::string& name);

private:
    Value evaluateAt(const Json& node, const std::string& path);

    Json definitions_;
    ComputationSettings settings_;
    std::map<std::string, Value> cache_;
    std::map<std::string, bool> inProgress_;
};

Json readJsonFile(const std::string& path);

}  // namespace uppnc
