#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "uppnc/binary.hpp"
#include "uppnc/families.hpp"
#include "uppnc/properties.hpp"
#include "uppnc/unary.hpp"

using namespace uppnc;
using namespace uppnc::testing;

namespace {

/// inf{t : f(t) >= y} by scanning the unrolled pieces of a nondecreasing raw curve.
Rational scanFirstReach(const RawCurve& f, const Rational& y, const Rational& horizon) {
    std::vector<Rational> bps = rawBreakpoints(f, horizon);
    for (std::size_t k = 0; k + 1 < bps.size(); ++k) {
        const Rational& a = bps[k];
        const Rational& b = bps[k + 1];
        if (rawValue(f, a) >= y) return a;
        Rational start = rawRightLimit(f, a), end = rawLeftLimit(f, b);
        if (start >= y) return a;
        if (end > y) return a + (y - start) * (b - a) / (end - start);
    }
    return Rational::plusInfinity();
}

/// sup{t : f(t) <= y}, or 0 when no instant qualifies.
Rational scanLastBelow(const RawCurve& f, const Rational& y, const Rational& horizon) {
    std::vector<Rational> bps = rawBreakpoints(f, horizon);
    if (rawValue(f, 0) > y) return 0;
    for (std::size_t k = 0; k + 1 < bps.size(); ++k) {
        const Rational& a = bps[k];
        const Rational& b = bps[k + 1];
        Rational start = rawRightLimit(f, a), end = rawLeftLimit(f, b);
        if (start > y) return a;
        if (end > y) return a + (y - start) * (b - a) / (end - start);
        if (rawValue(f, b) > y) return b;
    }
    return Rational::plusInfinity();
}

/// Values of the closure on [0, horizon[ by iterating h <- h min (h conv f) from the zero-delay curve.
Sequence iteratedClosure(const Curve& f, const Rational& horizon) {
    Curve h = zeroDelayCurve();
    for (int i = 0; i < 64; ++i) {
        Curve next = minimum(h, convolution(h, f));
        if (!lastDisagreement(next.cut(0, horizon), h.cut(0, horizon))) return h.cut(0, horizon);
        h = next;
    }
    throw std::runtime_error("iterated closure did not settle");
}

}  // namespace

TEST(PseudoInverse, Examples) {
    EXPECT_TRUE(equivalent(lowerPseudoInverse(linearCurve(1)), linearCurve(1)));
    Curve rl = lowerPseudoInverse(rateLatency(2, 3));
    EXPECT_EQ(rl.valueAt(4), q(5));
    EXPECT_EQ(rl.valueAt(0), q(0));
    EXPECT_EQ(upperPseudoInverse(sigmaRho(4, 1)).valueAt(2), q(0));
    // A flat stretch of the input becomes a jump of the inverse.
    Curve up = upperPseudoInverse(rateLatency(2, 3));
    EXPECT_EQ(up.valueAt(0), q(3));
    EXPECT_EQ(up.valueAt(4), q(5));
    EXPECT_THROW(lowerPseudoInverse(linearCurve(-1)), PreconditionError);
}

TEST(PseudoInverse, MatchScansOnRandomCurves) {
    CurveGenerator gen(41);
    CurveShape shape;
    shape.nonDecreasing = true;
    shape.nonNegative = true;
    for (int i = 0; i < 60; ++i) {
        RawCurve raw = gen.raw(shape);
        Curve f = raw.toCurve();
        if (raw.c.isZero()) continue;
        Curve lower = lowerPseudoInverse(f), upper = upperPseudoInverse(f);
        EXPECT_TRUE(isNonDecreasing(lower)) << f;
        EXPECT_TRUE(isLeftContinuous(lower)) << f;
        EXPECT_TRUE(isBelow(lower, upper)) << f;
        Rational top = f.valueAt(f.pseudoPeriodStart() + 2 * f.pseudoPeriodLength());
        Rational horizon = f.pseudoPeriodStart() + 6 * f.pseudoPeriodLength();
        for (Rational y = 0; y <= top; y += q(1, 6)) {
            ASSERT_EQ(lower.valueAt(y), scanFirstReach(raw, y, horizon)) << f << " y=" << y;
            ASSERT_EQ(upper.valueAt(y), scanLastBelow(raw, y, horizon)) << f << " y=" << y;
        }
    }
}

TEST(PseudoInverse, InvertsStrictlyIncreasingContinuousCurves) {
    Curve f = add(rateLatency(2, 1), linearCurve(q(1, 2)));
    Curve lower = lowerPseudoInverse(f);
    for (Rational t = 0; t <= 10; t += q(1, 5)) EXPECT_EQ(lower.valueAt(f.valueAt(t)), t);
}

TEST(Closure, Examples) {
    Curve c = subAdditiveClosure(constantCurve(3));
    EXPECT_EQ(c.valueAt(0), q(0));
    for (Rational t = q(1, 3); t <= 5; t += q(1, 3)) EXPECT_EQ(c.valueAt(t), q(3));
    EXPECT_TRUE(equivalent(subAdditiveClosure(delayCurve(2)), zeroCurve()));
    EXPECT_TRUE(equivalent(subAdditiveClosure(sigmaRho(4, 1)), sigmaRho(4, 1)));
    EXPECT_THROW(subAdditiveClosure(constantCurve(-1)), PreconditionError);
}

TEST(Closure, SuperAdditiveDual) {
    EXPECT_TRUE(equivalent(superAdditiveClosure(rateLatency(2, 1)), rateLatency(2, 1)));
    Curve c = superAdditiveClosure(constantCurve(-3));
    EXPECT_EQ(c.valueAt(0), q(0));
    EXPECT_EQ(c.valueAt(2), q(-3));
    EXPECT_TRUE(isSuperAdditive(superAdditiveClosure(listingOneCurve().negated())));
}

TEST(Closure, PinsTheOriginOfSubAdditiveCurves) {
    Curve lifted = sigmaRho(4, 1).verticalShift(1);
    Curve c = subAdditiveClosure(lifted);
    EXPECT_EQ(c.valueAt(0), q(0));
    for (Rational t = q(1, 2); t <= 6; t += q(1, 2)) EXPECT_EQ(c.valueAt(t), lifted.valueAt(t));
    EXPECT_TRUE(isSubAdditive(c));
}

TEST(Closure, MatchesIterationOnRandomCurves) {
    CurveGenerator gen(42);
    CurveShape shape;
    shape.nonNegative = true;
    shape.maxPoints = 2;
    int compared = 0;
    for (int i = 0; i < 40 && compared < 15; ++i) {
        Curve f = gen.curve(shape);
        // Keep the iteration short: it needs about horizon / (smallest step) rounds.
        if (f.rightLimitAt(0).isZero() || f.valueAt(0).isZero()) continue;
        Rational horizon = 6;
        Curve closure = subAdditiveClosure(f);
        EXPECT_FALSE(lastDisagreement(closure.cut(0, horizon), iteratedClosure(f, horizon)).has_value()) << f;
        ++compared;
    }
    EXPECT_GT(compared, 5);
}

TEST(Composition, Examples) {
    Curve f = listingOneCurve();
    EXPECT_TRUE(equivalent(composition(f, linearCurve(1)), f));
    EXPECT_TRUE(equivalent(composition(linearCurve(2), linearCurve(3)), linearCurve(6)));
    Curve stair = stairCurve(4, 3);
    Curve compressed = composition(stair, rateLatency(10000, 0));
    for (Rational t = 0; t <= q(1, 100); t += q(1, 10000)) EXPECT_EQ(compressed.valueAt(t), stair.valueAt(10000 * t));
    EXPECT_THROW(composition(f, linearCurve(-1)), PreconditionError);
}

TEST(Composition, MatchesPointwiseOracle) {
    CurveGenerator gen(43);
    CurveShape inner;
    inner.nonDecreasing = true;
    inner.nonNegative = true;
    for (int i = 0; i < 60; ++i) {
        RawCurve rf = gen.raw(), rg = gen.raw(inner);
        Curve h = composition(rf.toCurve(), rg.toCurve());
        Rational horizon = rg.T + 4 * rg.d;
        std::vector<Rational> ts = grid(horizon, q(1, 8));
        for (const auto& b : rawBreakpoints(rg, horizon)) ts.push_back(b);
        for (const auto& t : ts) ASSERT_EQ(h.valueAt(t), rawValue(rf, rawValue(rg, t))) << t;
    }
}
