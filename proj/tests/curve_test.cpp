#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "uppnc/families.hpp"
#include "uppnc/properties.hpp"

using namespace uppnc;
using namespace uppnc::testing;

namespace {

const Rational inf = Rational::plusInfinity();

/// The same function with its period written out twice.
Curve doubledPeriod(const Curve& f) {
    const Rational& T = f.pseudoPeriodStart();
    const Rational& d = f.pseudoPeriodLength();
    return Curve(f.extend(T + 2 * d), T, 2 * d, 2 * f.pseudoPeriodHeight());
}

}  // namespace

TEST(CurveConstruction, RejectsMalformedInput) {
    EXPECT_THROW(Sequence({Point(0, 0), Segment(1, 2, 0, 0)}), InvalidRepresentation);
    EXPECT_THROW(Sequence({Segment(0, 1, 0, 0)}), InvalidRepresentation);
    EXPECT_THROW(Segment(2, 1, 0, 0), InvalidRepresentation);
    EXPECT_THROW(Segment(0, 1, inf, 1), InvalidRepresentation);
    Sequence base({Point(0, 0), Segment(0, 2, 0, 1)});
    EXPECT_THROW(Curve(base, 0, 1, 1), InvalidRepresentation);
    EXPECT_THROW(Curve(base, 1, 0, 1), InvalidRepresentation);
    Sequence infiniteTail({Point(0, inf), Segment(0, 1, inf, 0)});
    EXPECT_THROW(Curve(infiniteTail, 0, 1, 1), InvalidRepresentation);
}

TEST(CurveEvaluation, ListingOneSamples) {
    Curve f = listingOneCurve();
    EXPECT_EQ(f.valueAt(0), q(0));
    EXPECT_EQ(f.valueAt(1), q(1));
    EXPECT_EQ(f.valueAt(2), q(2));
    EXPECT_EQ(f.valueAt(q(5, 2)), q(2));
    EXPECT_EQ(f.valueAt(q(7, 2)), q(5, 2));
    EXPECT_EQ(f.valueAt(4), q(3));
    EXPECT_EQ(f.valueAt(6), q(4));
    EXPECT_EQ(f.leftLimitAt(2), q(2));
    EXPECT_EQ(f.rightLimitAt(2), q(2));
    EXPECT_THROW(f.valueAt(-1), std::out_of_range);
    EXPECT_THROW(f.leftLimitAt(0), std::out_of_range);
}

TEST(CurveEvaluation, PeriodicLawOnListingOne) {
    Curve f = listingOneCurve();
    for (Rational t = 2; t <= 8; t += q(1, 4))
        for (int k = 1; k <= 3; ++k) EXPECT_EQ(f.valueAt(t + k * q(2)), f.valueAt(t) + q(k)) << t << " k=" << k;
}

TEST(CurveEvaluation, PeriodicLawOnRandomCurves) {
    CurveGenerator gen(21);
    CurveShape shape;
    shape.allowPlusInfinity = true;
    for (int i = 0; i < 100; ++i) {
        Curve f = gen.curve(shape);
        const Rational& T = f.pseudoPeriodStart();
        const Rational& d = f.pseudoPeriodLength();
        for (Rational t = T; t <= T + 3 * d; t += d / 7)
            for (int k = 0; k <= 3; ++k) {
                Rational base = f.valueAt(t);
                Rational expected = base.isFinite() ? base + k * f.pseudoPeriodHeight() : base;
                ASSERT_EQ(f.valueAt(t + k * d), expected) << f;
            }
    }
}

TEST(CurveEvaluation, ExtendUnrollsThePeriod) {
    Sequence s = listingOneCurve().extend(8);
    EXPECT_EQ(s.definedUntil(), q(8));
    EXPECT_EQ(s.valueAt(4), q(3));
    EXPECT_EQ(s.valueAt(5), q(3));
    EXPECT_EQ(s.valueAt(6), q(4));
    EXPECT_EQ(s.valueAt(7), q(4));
    EXPECT_THROW(listingOneCurve().extend(0), std::invalid_argument);
}

TEST(CurveEvaluation, ExtendCutAndValueAgreeOnRandomCurves) {
    CurveGenerator gen(22);
    for (int i = 0; i < 60; ++i) {
        RawCurve raw = gen.raw();
        Curve f = raw.toCurve();
        Rational horizon = f.pseudoPeriodStart() + 4 * f.pseudoPeriodLength();
        Sequence window = f.extend(horizon);
        Sequence piece = f.cut(horizon / 3, horizon);
        for (Rational t = 0; t < horizon; t += q(1, 6)) {
            ASSERT_EQ(window.valueAt(t), f.valueAt(t));
            ASSERT_EQ(f.valueAt(t), rawValue(raw, t));
            if (t >= horizon / 3) {
                ASSERT_EQ(piece.valueAt(t), f.valueAt(t));
            }
            if (t.sign() > 0) {
                ASSERT_EQ(f.leftLimitAt(t), rawLeftLimit(raw, t));
            }
            ASSERT_EQ(f.rightLimitAt(t), rawRightLimit(raw, t));
        }
    }
}

TEST(CurveCut, RateLatencyWindow) {
    Sequence s = rateLatency(3, 3).cut(2, 5);
    Sequence expected({Point(2, 0), Segment(2, 3, 0, 0), Point(3, 0), Segment(3, 5, 0, 3)});
    EXPECT_EQ(s.canonical(), expected);
    EXPECT_EQ(listingOneCurve().cut(0, 4), listingOneCurve().baseSequence());
    EXPECT_THROW(listingOneCurve().cut(3, 3), std::invalid_argument);
}

TEST(CurveShift, DelayAndAnticipate) {
    Curve f = listingOneCurve();
    EXPECT_TRUE(equivalent(f.delayBy(0), f));
    Curve g = f.delayBy(q(3, 2));
    EXPECT_EQ(g.valueAt(1), q(0));
    EXPECT_EQ(g.valueAt(q(5, 2)), f.valueAt(1));
    EXPECT_TRUE(equivalent(g.anticipateBy(q(3, 2)), f));
    EXPECT_EQ(f.anticipateBy(1).valueAt(1), f.valueAt(2));
    EXPECT_THROW(f.delayBy(-1), std::exception);
}

TEST(CurveShift, VerticalShiftKeepsThePeriodHeight) {
    Curve g = rateLatency(3, 4).verticalShift(3);
    EXPECT_EQ(g.valueAt(4), q(3));
    EXPECT_EQ(g.valueAt(0), q(3));
    EXPECT_EQ(g.pseudoPeriodHeight(), rateLatency(3, 4).pseudoPeriodHeight());
    EXPECT_TRUE(equivalent(listingOneCurve().verticalShift(0), listingOneCurve()));
}

TEST(SequenceCanonical, MergesColinearPieces) {
    Sequence s({Point(0, 0), Segment(0, 1, 0, 1), Point(1, 1), Segment(1, 2, 1, 1)});
    EXPECT_EQ(s.canonical(), Sequence({Point(0, 0), Segment(0, 2, 0, 1)}));
    Sequence kink({Point(0, 0), Segment(0, 1, 0, 1), Point(1, 1), Segment(1, 2, 1, 2)});
    EXPECT_EQ(kink.canonical(), kink);
}

TEST(SequenceCanonical, IdempotentOnRandomSequences) {
    CurveGenerator gen(23);
    for (int i = 0; i < 100; ++i) {
        Sequence s = gen.curve().extend(10);
        Sequence once = s.canonical();
        EXPECT_EQ(once.canonical(), once);
        EXPECT_LE(once.size(), s.size());
        EXPECT_FALSE(lastDisagreement(once, s).has_value());
    }
}

TEST(CurveMinimize, HalvesADoubledPeriod) {
    Curve f = listingOneCurve();
    Curve doubled = doubledPeriod(f);
    Curve m = doubled.minimized();
    EXPECT_EQ(m.pseudoPeriodLength(), q(2));
    EXPECT_EQ(m.pseudoPeriodHeight(), q(1));
    EXPECT_LT(m.baseSequence().size(), doubled.baseSequence().size());
    EXPECT_EQ(m.minimized(), m);
    // The periodic law already holds from t = 1, so only the start moves.
    Curve own = f.minimized();
    EXPECT_EQ(own.pseudoPeriodStart(), q(1));
    EXPECT_EQ(own.pseudoPeriodLength(), q(2));
    EXPECT_EQ(own.pseudoPeriodHeight(), q(1));
    EXPECT_LT(own.baseSequence().size(), f.baseSequence().size());
    EXPECT_TRUE(equivalent(own, f));
    EXPECT_EQ(m, own);
}

TEST(CurveMinimize, ShrinksThePeriodStart) {
    // RL(1, 1) written with its period starting late.
    Curve late(rateLatency(1, 1).extend(7), 5, 2, 2);
    Curve m = late.minimized();
    EXPECT_EQ(m.pseudoPeriodStart(), q(1));
    EXPECT_EQ(m.pseudoPeriodLength(), q(1));
    EXPECT_TRUE(equivalent(m, late));
}

TEST(CurveEquivalence, Examples) {
    Curve f = listingOneCurve();
    EXPECT_TRUE(equivalent(f, doubledPeriod(f)));
    EXPECT_FALSE(equivalent(rateLatency(3, 3), rateLatency(3, 3).verticalShift(1)));
    EXPECT_FALSE(equivalent(linearCurve(1), linearCurve(2)));
}

TEST(CurveRate, Examples) {
    EXPECT_EQ(listingOneCurve().asymptoticRate(), q(1, 2));
    EXPECT_EQ(rateLatency(5, 2).asymptoticRate(), q(5));
    EXPECT_EQ(delayCurve(3).asymptoticRate(), inf);
    EXPECT_EQ(zeroDelayCurve().asymptoticRate(), inf);
}

TEST(CurveProperties, Examples) {
    CurveProperties sr = classify(sigmaRho(4, 1));
    EXPECT_FALSE(sr.isContinuous);
    EXPECT_TRUE(sr.isConcave);
    EXPECT_TRUE(sr.isSubAdditive);
    CurveProperties rl = classify(rateLatency(3, 3));
    EXPECT_TRUE(rl.isContinuous);
    EXPECT_TRUE(rl.isConvex);
    EXPECT_FALSE(rl.isConcave);
    CurveProperties l1 = classify(listingOneCurve());
    EXPECT_TRUE(l1.isNonDecreasing);
    EXPECT_FALSE(l1.isConcave);
    EXPECT_TRUE(l1.isContinuous);
    EXPECT_TRUE(l1.isNonNegative);
    EXPECT_FALSE(isSubAdditive(constantCurve(-1)));
    EXPECT_TRUE(isSuperAdditive(rateLatency(2, 1)));
}

TEST(CurveProperties, AgreeWithGridChecksOnRandomCurves) {
    CurveGenerator gen(24);
    int subAdditiveSeen = 0;
    for (int i = 0; i < 80; ++i) {
        CurveShape shape;
        shape.nonNegative = gen.coin();
        shape.nonDecreasing = gen.coin(0.3);
        RawCurve raw = gen.raw(shape);
        Curve f = raw.toCurve();
        Rational horizon = f.pseudoPeriodStart() + 3 * f.pseudoPeriodLength();
        std::vector<Rational> ts = grid(horizon, q(1, 8));

        bool nonDecreasing = true, nonNegative = true;
        for (std::size_t k = 0; k < ts.size(); ++k) {
            Rational v = rawValue(raw, ts[k]);
            if (v.sign() < 0 || (ts[k].sign() > 0 && rawLeftLimit(raw, ts[k]).sign() < 0)) nonNegative = false;
            if (k > 0 && rawValue(raw, ts[k - 1]) > v) nonDecreasing = false;
            if (ts[k].sign() > 0 && rawLeftLimit(raw, ts[k]) > v) nonDecreasing = false;
            if (v > rawRightLimit(raw, ts[k])) nonDecreasing = false;
        }
        // A grid can only refute these properties.
        if (isNonDecreasing(f)) {
            EXPECT_TRUE(nonDecreasing) << f;
        }
        if (isNonNegative(f)) {
            EXPECT_TRUE(nonNegative) << f;
        }

        bool subAdditive = rawValue(raw, 0).sign() >= 0;
        for (std::size_t a = 0; a < ts.size() && subAdditive; a += 2)
            for (std::size_t b = a; b < ts.size() && ts[a] + ts[b] <= horizon; b += 2)
                if (rawValue(raw, ts[a] + ts[b]) > rawValue(raw, ts[a]) + rawValue(raw, ts[b])) {
                    subAdditive = false;
                    break;
                }
        if (isSubAdditive(f)) {
            ++subAdditiveSeen;
            EXPECT_TRUE(subAdditive) << f;
        }

        if (isConcave(f) || isConvex(f)) {
            bool concave = isConcave(f);
            for (std::size_t k = 1; k + 1 < ts.size(); ++k) {
                Rational mid = rawValue(raw, ts[k]);
                Rational chord = (rawValue(raw, ts[k - 1]) + rawValue(raw, ts[k + 1])) / 2;
                if (ts[k - 1].isZero()) continue;  // an origin jump is allowed
                EXPECT_TRUE(concave ? mid >= chord : mid <= chord) << f;
            }
        }
    }
    SUCCEED() << subAdditiveSeen;
}

TEST(CurvePurity, OperationsLeaveInputsUnchanged) {
    Curve f = listingOneCurve();
    Curve copy = f;
    (void)f.minimized();
    (void)f.delayBy(1);
    (void)f.verticalShift(2);
    (void)f.extend(20);
    EXPECT_EQ(f, copy);
}
