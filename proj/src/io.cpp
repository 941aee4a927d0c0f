#include "uppnc/io.hpp"

#include <fstream>

#include "uppnc/binary.hpp"
#include "uppnc/families.hpp"
#include "uppnc/unary.hpp"

namespace uppnc {

namespace {

const Json& field(const Json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) throw ParseError(std::string("missing field \"") + name + "\"");
    return j.at(name);
}

struct FamilySchema {
    CurveFamily family;
    std::vector<const char*> params;
};

const std::map<std::string, FamilySchema>& familySchemas() {
    static const std::map<std::string, FamilySchema> schemas{
        {"rateLatency", {CurveFamily::RateLatency, {"rate", "latency"}}},
        {"sigmaRho", {CurveFamily::SigmaRho, {"sigma", "rho"}}},
        {"delay", {CurveFamily::Delay, {"theta"}}},
        {"stair", {CurveFamily::Stair, {"height", "width"}}},
        {"constant", {CurveFamily::Constant, {"value"}}},
        {"flowControl", {CurveFamily::FlowControl, {"rate", "latency", "window"}}},
    };
    return schemas;
}

}  // namespace

Json rationalToJson(const Rational& r) { return r.toString(); }

Rational rationalFromJson(const Json& j) {
    try {
        if (j.is_string()) return Rational::parse(j.get<std::string>());
        if (j.is_number_integer()) return Rational(j.get<long long>());
    } catch (const std::exception& e) {
        throw ParseError(std::string("invalid rational: ") + e.what());
    }
    throw ParseError("rational must be a string such as \"3/2\" or an integer, got " + j.dump());
}

Json elementToJson(const Element& e) {
    if (const auto* p = std::get_if<Point>(&e))
        return Json{{"kind", "point"}, {"time", rationalToJson(p->time)}, {"value", rationalToJson(p->value)}};
    const auto& s = std::get<Segment>(e);
    return Json{{"kind", "segment"},
                {"startTime", rationalToJson(s.startTime)},
                {"endTime", rationalToJson(s.endTime)},
                {"rightLimitAtStart", rationalToJson(s.rightLimitAtStart)},
                {"slope", rationalToJson(s.slope)}};
}

Element elementFromJson(const Json& j) {
    const std::string kind = field(j, "kind").get<std::string>();
    try {
        if (kind == "point") return Point(rationalFromJson(field(j, "time")), rationalFromJson(field(j, "value")));
        if (kind == "segment")
            return Segment(rationalFromJson(field(j, "startTime")), rationalFromJson(field(j, "endTime")),
                           rationalFromJson(field(j, "rightLimitAtStart")), rationalFromJson(field(j, "slope")));
    } catch (const InvalidRepresentation& e) {
        throw ParseError(e.what());
    }
    throw ParseError("unknown element kind \"" + kind + "\"");
}

Json sequenceToJson(const Sequence& s) {
    Json out = Json::array();
    for (const auto& e : s.elements()) out.push_back(elementToJson(e));
    return out;
}

Sequence sequenceFromJson(const Json& j) {
    if (!j.is_array()) throw ParseError("a sequence is a JSON array of elements");
    std::vector<Element> elements;
    for (const auto& e : j) elements.push_back(elementFromJson(e));
    try {
        return Sequence(std::move(elements));
    } catch (const InvalidRepresentation& e) {
        throw ParseError(e.what());
    }
}

Json curveToJson(const Curve& c) {
    Curve m = c.minimized();
    return Json{{"type", "generic"},
                {"baseSequence", sequenceToJson(m.baseSequence())},
                {"pseudoPeriodStart", rationalToJson(m.pseudoPeriodStart())},
                {"pseudoPeriodLength", rationalToJson(m.pseudoPeriodLength())},
                {"pseudoPeriodHeight", rationalToJson(m.pseudoPeriodHeight())}};
}

Curve curveFromJson(const Json& j) {
    const std::string type = field(j, "type").get<std::string>();
    if (type == "generic") {
        try {
            return Curve(sequenceFromJson(field(j, "baseSequence")), rationalFromJson(field(j, "pseudoPeriodStart")),
                         rationalFromJson(field(j, "pseudoPeriodLength")),
                         rationalFromJson(field(j, "pseudoPeriodHeight")));
        } catch (const InvalidRepresentation& e) {
            throw ParseError(e.what());
        }
    }
    auto it = familySchemas().find(type);
    if (it == familySchemas().end()) throw ParseError("unknown curve type \"" + type + "\"");
    std::vector<Rational> params;
    for (const char* name : it->second.params) params.push_back(rationalFromJson(field(j, name)));
    try {
        return construct(it->second.family, params);
    } catch (const std::invalid_argument& e) {
        throw ParseError(type + ": " + e.what());
    }
}

Json valueToJson(const Value& v) {
    if (const auto* c = std::get_if<Curve>(&v)) return curveToJson(*c);
    if (const auto* s = std::get_if<Sequence>(&v)) return sequenceToJson(*s);
    return std::get<Rational>(v).toFractionString();
}

Json readJsonFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

Evaluator::Evaluator(Json definitions, ComputationSettings settings)
    : definitions_(std::move(definitions)), settings_(settings) {
    if (!definitions_.is_object()) throw ParseError("definitions must be a JSON object of named curves");
}

Value Evaluator::evaluate(const Json& expression) { return evaluateAt(expression, "$"); }

const Value& Evaluator::resolve(const std::string& name) {
    if (auto it = cache_.find(name); it != cache_.end()) return it->second;
    if (!definitions_.contains(name)) throw UnresolvedReference("unresolved reference \"" + name + "\"");
    if (inProgress_[name]) throw ParseError("definition \"" + name + "\" refers to itself");
    inProgress_[name] = true;
    const Json& def = definitions_.at(name);
    Value v = def.contains("type") ? Value(curveFromJson(def)) : evaluateAt(def, name);
    inProgress_[name] = false;
    return cache_.emplace(name, std::move(v)).first->second;
}

Value Evaluator::evaluateAt(const Json& node, const std::string& path) {
    if (!node.is_object()) throw ParseError(path + ": expression must be an object");
    if (node.contains("ref")) {
        if (!node.at("ref").is_string()) throw ParseError(path + ": \"ref\" must be a string");
        const std::string name = node.at("ref").get<std::string>();
        if (!definitions_.contains(name)) throw UnresolvedReference(path + ": unresolved reference \"" + name + "\"");
        return resolve(name);
    }
    if (node.contains("type")) return curveFromJson(node);
    if (!node.contains("op")) throw ParseError(path + ": expression needs \"op\", \"ref\" or \"type\"");

    const std::string op = node.at("op").get<std::string>();
    const std::string here = path + "/" + op;
    const Json args = node.value("args", Json::array());
    const Json params = node.value("params", Json::object());
    if (!args.is_array()) throw ParseError(here + ": \"args\" must be an array");

    auto arity = [&](std::size_t low, std::size_t high) {
        if (args.size() < low || args.size() > high)
            throw ParseError(here + ": wrong number of arguments (" + std::to_string(args.size()) + ")");
    };
    auto param = [&](const char* name) -> Rational {
        if (!params.contains(name)) throw ParseError(here + ": missing parameter \"" + name + "\"");
        try {
            return rationalFromJson(params.at(name));
        } catch (const ParseError& e) {
            throw ParseError(here + ": " + e.what());
        }
    };
    auto flag = [&](const char* name, bool fallback = false) {
        if (!params.contains(name)) return fallback;
        const Json& v = params.at(name);
        if (v.is_boolean()) return v.get<bool>();
        if (v.is_string() && (v == "true" || v == "false")) return v == "true";
        throw ParseError(here + ": parameter \"" + std::string(name) + "\" must be a boolean");
    };
    auto curveArg = [&](std::size_t i) -> Curve {
        std::string sub = here + "[" + std::to_string(i) + "]";
        Value v = evaluateAt(args[i], sub);
        if (auto* c = std::get_if<Curve>(&v)) return std::move(*c);
        throw ParseError(sub + ": expected a curve operand");
    };
    auto curveArgs = [&]() {
        std::vector<Curve> out;
        for (std::size_t i = 0; i < args.size(); ++i) out.push_back(curveArg(i));
        return out;
    };

    const ComputationSettings& s = settings_;
    static const std::map<std::string, int> known{
        {"min", 0}, {"max", 0}, {"add", 0}, {"sub", 2}, {"conv", 2}, {"deconv", 2}, {"maxconv", 2},
        {"maxdeconv", 2}, {"vdev", 2}, {"hdev", 2}, {"lpi", 1}, {"upi", 1}, {"subclosure", 1},
        {"superclosure", 1}, {"compose", 2}, {"delay", -1}, {"anticipate", 1}, {"vshift", 1}, {"cut", 1}};
    auto kind = known.find(op);
    if (kind == known.end()) throw ParseError(here + ": unknown operation");

    // Operands are evaluated before the operation so that errors inside them
    // carry their own, deeper path.
    std::vector<Curve> operands;
    if (kind->second == 0) {
        arity(2, SIZE_MAX);
        operands = curveArgs();
    } else if (kind->second > 0) {
        arity(kind->second, kind->second);
        operands = curveArgs();
    } else {
        arity(0, 1);
        operands = curveArgs();
    }

    try {
        if (op == "min") return minimumMany(operands, s);
        if (op == "max") return maximumMany(operands, s);
        if (op == "add") return addMany(operands, s);
        if (op == "sub")
            return subtract(operands[0], operands[1],
                            flag("nonNegative", true) ? SubtractionMode::NonNegative : SubtractionMode::Plain, s);
        if (op == "conv") return dispatchConvolution(operands[0], operands[1], s);
        if (op == "deconv") return deconvolution(operands[0], operands[1], s);
        if (op == "maxconv") return maxPlusConvolution(operands[0], operands[1], s);
        if (op == "maxdeconv") return maxPlusDeconvolution(operands[0], operands[1], s);
        if (op == "vdev") return verticalDeviation(operands[0], operands[1]);
        if (op == "hdev") return horizontalDeviation(operands[0], operands[1]);
        if (op == "lpi") return lowerPseudoInverse(operands[0]);
        if (op == "upi") return upperPseudoInverse(operands[0]);
        if (op == "subclosure") return subAdditiveClosure(operands[0], s);
        if (op == "superclosure") return superAdditiveClosure(operands[0], s);
        if (op == "compose") return composition(operands[0], operands[1]);
        if (op == "delay") {
            Rational theta = param("theta");
            return operands.empty() ? delayCurve(theta) : operands[0].delayBy(theta);
        }
        if (op == "anticipate") return operands[0].anticipateBy(param("theta"));
        if (op == "vshift") return operands[0].verticalShift(param("value"));
        if (op == "cut") return operands[0].cut(param("from"), param("until"));
    } catch (const ParseError&) {
        throw;
    } catch (const std::logic_error& e) {
        throw EvaluationError(here + ": " + e.what());
    }
    throw ParseError(here + ": unknown operation");
}

}  // namespace uppnc
