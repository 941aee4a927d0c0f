#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "uppnc/families.hpp"
#include "uppnc/io.hpp"

using namespace uppnc;
using namespace uppnc::testing;

namespace {

Json parse(const char* text) { return Json::parse(text); }

Curve evalCurve(Evaluator& e, const char* expr) { return std::get<Curve>(e.evaluate(parse(expr))); }

Json listingThreeDefs() {
    return parse(R"({
        "ac": {"type": "sigmaRho", "sigma": "1", "rho": "1"},
        "sc": {"op": "min", "args": [
            {"type": "rateLatency", "rate": "3", "latency": "0"},
            {"op": "vshift", "args": [{"type": "rateLatency", "rate": "3", "latency": "4"}], "params": {"value": "3"}}
        ]}
    })");
}

}  // namespace

TEST(RationalJson, CanonicalStrings) {
    EXPECT_EQ(rationalToJson(q(6, 4)), Json("3/2"));
    EXPECT_EQ(rationalToJson(q(2)), Json("2"));
    EXPECT_EQ(rationalToJson(Rational::plusInfinity()), Json("inf"));
    EXPECT_EQ(rationalToJson(Rational::minusInfinity()), Json("-inf"));
    EXPECT_EQ(rationalFromJson(Json("-3/9")), q(-1, 3));
    EXPECT_EQ(rationalFromJson(Json(5)), q(5));
    EXPECT_THROW(rationalFromJson(Json("1/0")), ParseError);
    EXPECT_THROW(rationalFromJson(Json(1.5)), ParseError);
}

TEST(CurveJson, FieldNamesAreFixed) {
    Json j = curveToJson(rateLatency(1, 2));
    EXPECT_EQ(j.at("type"), "generic");
    EXPECT_EQ(j.at("pseudoPeriodStart"), "2");
    EXPECT_EQ(j.at("pseudoPeriodLength"), "1");
    EXPECT_EQ(j.at("pseudoPeriodHeight"), "1");
    const Json& first = j.at("baseSequence").at(0);
    EXPECT_EQ(first.at("kind"), "point");
    EXPECT_EQ(first.at("time"), "0");
    EXPECT_EQ(first.at("value"), "0");
    const Json& second = j.at("baseSequence").at(1);
    EXPECT_EQ(second.at("kind"), "segment");
    EXPECT_EQ(second.at("startTime"), "0");
    EXPECT_EQ(second.at("endTime"), "2");
    EXPECT_EQ(second.at("rightLimitAtStart"), "0");
    EXPECT_EQ(second.at("slope"), "0");
}

TEST(CurveJson, ParsesTheShippedListingOneFile) {
    Curve f = curveFromJson(readJsonFile(std::string(UPPNC_LISTINGS) + "/listing1_curve.json"));
    EXPECT_EQ(f, listingOneCurve());
}

TEST(CurveJson, FamilyTypes) {
    EXPECT_TRUE(equivalent(curveFromJson(parse(R"({"type":"rateLatency","rate":"3","latency":"3"})")),
                           rateLatency(3, 3)));
    EXPECT_TRUE(equivalent(curveFromJson(parse(R"({"type":"sigmaRho","sigma":"4","rho":"1"})")), sigmaRho(4, 1)));
    EXPECT_TRUE(equivalent(curveFromJson(parse(R"({"type":"delay","theta":"4"})")), delayCurve(4)));
    EXPECT_TRUE(equivalent(curveFromJson(parse(R"({"type":"stair","height":"2","width":"3"})")), stairCurve(2, 3)));
    EXPECT_TRUE(equivalent(curveFromJson(parse(R"({"type":"constant","value":"-1/2"})")), constantCurve(q(-1, 2))));
    EXPECT_TRUE(equivalent(curveFromJson(parse(R"({"type":"flowControl","rate":"2","latency":"3","window":"4"})")),
                           flowControl(2, 3, 4)));
}

TEST(CurveJson, RejectsMalformedCurves) {
    EXPECT_THROW(curveFromJson(parse(R"({"type":"spline"})")), ParseError);
    EXPECT_THROW(curveFromJson(parse(R"({"type":"rateLatency","rate":"3"})")), ParseError);
    EXPECT_THROW(curveFromJson(parse(R"({"type":"rateLatency","rate":"-3","latency":"1"})")), ParseError);
    EXPECT_THROW(curveFromJson(parse(R"({"type":"generic","baseSequence":[{"kind":"blob"}],
        "pseudoPeriodStart":"0","pseudoPeriodLength":"1","pseudoPeriodHeight":"0"})")),
                 ParseError);
    EXPECT_THROW(curveFromJson(parse(R"({"type":"generic","baseSequence":[
        {"kind":"point","time":"0","value":"0"},{"kind":"segment","startTime":"0","endTime":"1","rightLimitAtStart":"0","slope":"0"}],
        "pseudoPeriodStart":"0","pseudoPeriodLength":"2","pseudoPeriodHeight":"0"})")),
                 ParseError);
}

TEST(CurveJson, RoundTripIsEquivalentAndByteStable) {
    CurveGenerator gen(71);
    CurveShape shape;
    shape.allowPlusInfinity = true;
    for (int i = 0; i < 100; ++i) {
        Curve f = gen.curve(shape);
        std::string text = curveToJson(f).dump();
        Curve back = curveFromJson(Json::parse(text));
        EXPECT_TRUE(equivalent(back, f));
        EXPECT_EQ(curveToJson(back).dump(), text);
    }
}

TEST(Evaluator, ListingThreeDeviation) {
    Evaluator e(listingThreeDefs());
    Value v = e.evaluate(parse(R"({"op":"hdev","args":[{"ref":"ac"},{"ref":"sc"}]})"));
    ASSERT_TRUE(std::holds_alternative<Rational>(v));
    EXPECT_EQ(std::get<Rational>(v), q(2));
    EXPECT_EQ(std::get<Rational>(v).toFractionString(), "2/1");
    EXPECT_EQ(valueToJson(v), Json("2/1"));
    EXPECT_EQ(rationalFromJson(valueToJson(v)), q(2));
}

TEST(Evaluator, ListingFourResidual) {
    Evaluator e(readJsonFile(std::string(UPPNC_LISTINGS) + "/listing4_defs.json"));
    Curve r = std::get<Curve>(e.evaluate(readJsonFile(std::string(UPPNC_LISTINGS) + "/listing4_expr.json")));
    Curve expected = curveFromJson(readJsonFile(std::string(UPPNC_LISTINGS) + "/listing4_expected.json"));
    EXPECT_TRUE(equivalent(r, expected));
    EXPECT_EQ(r.rightLimitAt(4), q(3));
}

TEST(Evaluator, OperationsAndParameters) {
    Evaluator e(parse(R"({"f": {"type":"rateLatency","rate":"2","latency":"1"}})"));
    EXPECT_TRUE(equivalent(evalCurve(e, R"({"op":"conv","args":[{"ref":"f"},{"op":"delay","params":{"theta":"0"}}]})"),
                           rateLatency(2, 1)));
    EXPECT_TRUE(equivalent(evalCurve(e, R"({"op":"delay","args":[{"ref":"f"}],"params":{"theta":"2"}})"),
                           rateLatency(2, 3)));
    EXPECT_TRUE(equivalent(evalCurve(e, R"({"op":"anticipate","args":[{"ref":"f"}],"params":{"theta":"1"}})"),
                           linearCurve(2)));
    EXPECT_TRUE(equivalent(evalCurve(e, R"({"op":"add","args":[{"ref":"f"},{"ref":"f"},{"ref":"f"}]})"),
                           rateLatency(6, 1)));
    EXPECT_TRUE(equivalent(evalCurve(e, R"({"op":"sub","args":[{"ref":"f"},{"ref":"f"}],"params":{"nonNegative":false}})"),
                           zeroCurve()));
    Value cut = e.evaluate(parse(R"({"op":"cut","args":[{"ref":"f"}],"params":{"from":"0","until":"3"}})"));
    ASSERT_TRUE(std::holds_alternative<Sequence>(cut));
    EXPECT_EQ(std::get<Sequence>(cut).valueAt(2), q(2));
    EXPECT_EQ(std::get<Rational>(e.evaluate(parse(R"({"op":"vdev","args":[{"ref":"f"},{"ref":"f"}]})"))), q(0));
    for (const char* op : {"lpi", "upi", "subclosure", "superclosure"})
        EXPECT_NO_THROW(e.evaluate(Json{{"op", op}, {"args", Json::array({Json{{"ref", "f"}}})}})) << op;
}

TEST(Evaluator, ErrorsNameTheFailingSubexpression) {
    Evaluator e(parse(R"({"f": {"type":"rateLatency","rate":"2","latency":"1"}})"));
    try {
        e.evaluate(parse(R"({"op":"min","args":[{"op":"sub","args":[{"ref":"g"},{"ref":"f"}]},{"ref":"f"}]})"));
        FAIL();
    } catch (const UnresolvedReference& err) {
        EXPECT_NE(std::string(err.what()).find("$/min[0]/sub[0]"), std::string::npos) << err.what();
    }
    EXPECT_THROW(e.evaluate(parse(R"({"op":"frobnicate","args":[]})")), ParseError);
    EXPECT_THROW(e.evaluate(parse(R"({"op":"conv","args":[{"ref":"f"}]})")), ParseError);
    EXPECT_THROW(e.evaluate(parse(R"({"op":"delay","args":[]})")), ParseError);
    try {
        e.evaluate(parse(R"({"op":"subclosure","args":[{"type":"constant","value":"-1"}]})"));
        FAIL();
    } catch (const EvaluationError& err) {
        EXPECT_NE(std::string(err.what()).find("subclosure"), std::string::npos) << err.what();
    }
}

TEST(Evaluator, DefinitionsMayBeExpressionsButNotCycles) {
    Evaluator e(parse(R"({
        "a": {"op": "add", "args": [{"ref": "b"}, {"ref": "b"}]},
        "b": {"type": "constant", "value": "2"},
        "loop": {"op": "min", "args": [{"ref": "loop"}, {"ref": "b"}]}
    })"));
    EXPECT_EQ(std::get<Curve>(e.resolve("a")).valueAt(3), q(4));
    EXPECT_THROW(e.resolve("loop"), ParseError);
    EXPECT_THROW(e.resolve("missing"), UnresolvedReference);
}
