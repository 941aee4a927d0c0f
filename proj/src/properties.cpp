#include "uppnc/properties.hpp"

#include "uppnc/binary.hpp"

namespace uppnc {

namespace {

/// Two full pseudo-periods past the transient: every kind of breakpoint,
/// including the seam between periods, appears with both neighbours.
Sequence window(const Curve& f) { return f.extend(f.pseudoPeriodStart() + 2 * f.pseudoPeriodLength()); }

template <class Check>
bool everyBreakpoint(const Sequence& w, Check check) {
    for (std::size_t k = 0; k < w.pointCount(); ++k) {
        const Rational& value = w.pointAt(k).value;
        const Rational& right = w.segmentAt(k).rightLimitAtStart;
        if (k == 0) {
            if (!check(nullptr, value, right)) return false;
        } else {
            Rational left = w.segmentAt(k - 1).leftLimitAtEnd();
            if (!check(&left, value, right)) return false;
        }
    }
    return true;
}

}  // namespace

bool isLeftContinuous(const Curve& f) {
    return everyBreakpoint(window(f), [](const Rational* left, const Rational& v, const Rational&) {
        return !left || *left == v;
    });
}

bool isRightContinuous(const Curve& f) {
    return everyBreakpoint(window(f), [](const Rational*, const Rational& v, const Rational& right) { return v == right; });
}

bool isContinuous(const Curve& f) {
    return everyBreakpoint(window(f), [](const Rational* left, const Rational& v, const Rational& right) {
        return (!left || *left == v) && v == right;
    });
}

bool isNonDecreasing(const Curve& f) {
    if (f.pseudoPeriodHeight().sign() < 0) return false;
    Sequence w = window(f);
    for (std::size_t k = 0; k < w.pointCount(); ++k)
        if (w.segmentAt(k).slope.sign() < 0) return false;
    return everyBreakpoint(w, [](const Rational* left, const Rational& v, const Rational& right) {
        return (!left || *left <= v) && v <= right;
    });
}

bool isNonNegative(const Curve& f) {
    if (f.pseudoPeriodHeight().sign() < 0) return false;
    Sequence w = window(f);
    for (std::size_t k = 0; k < w.pointCount(); ++k) {
        const Segment& s = w.segmentAt(k);
        if (w.pointAt(k).value.sign() < 0 || s.rightLimitAtStart.sign() < 0 || s.leftLimitAtEnd().sign() < 0)
            return false;
    }
    return true;
}

bool isConvex(const Curve& f) {
    Sequence w = window(f);
    std::optional<Rational> lastSlope;
    bool reachedInfinity = false;
    for (std::size_t k = 0; k < w.pointCount(); ++k) {
        const Rational& value = w.pointAt(k).value;
        const Segment& s = w.segmentAt(k);
        if (reachedInfinity) {
            if (!value.isPlusInfinity() || !s.rightLimitAtStart.isPlusInfinity()) return false;
            continue;
        }
        if (value.isMinusInfinity() || s.rightLimitAtStart.isMinusInfinity()) return false;
        if (value.isPlusInfinity()) {
            // The extended-value domain ends just before this instant.
            reachedInfinity = true;
            if (!s.rightLimitAtStart.isPlusInfinity()) return false;
            continue;
        }
        if (k > 0) {
            Rational left = w.segmentAt(k - 1).leftLimitAtEnd();
            if (left != value && !(s.rightLimitAtStart.isPlusInfinity() && left <= value)) return false;
        }
        if (s.rightLimitAtStart.isPlusInfinity()) {
            reachedInfinity = true;
            continue;
        }
        if (k > 0 && value != s.rightLimitAtStart) return false;
        if (k == 0 && value < s.rightLimitAtStart) return false;
        if (lastSlope && s.slope < *lastSlope) return false;
        lastSlope = s.slope;
    }
    return true;
}

bool isConcave(const Curve& f) { return isConvex(f.negated()); }

bool isSubAdditive(const Curve& f, const ComputationSettings& settings) {
    if (f.valueAt(0).sign() < 0) return false;
    return equivalent(f, minimum(f, convolution(f, f, settings), settings));
}

bool isSuperAdditive(const Curve& f, const ComputationSettings& settings) {
    return isSubAdditive(f.negated(), settings);
}

CurveProperties classify(const Curve& f, const ComputationSettings& settings) {
    CurveProperties p;
    p.isLeftContinuous = isLeftContinuous(f);
    p.isRightContinuous = isRightContinuous(f);
    p.isContinuous = p.isLeftContinuous && p.isRightContinuous;
    p.isNonDecreasing = isNonDecreasing(f);
    p.isNonNegative = isNonNegative(f);
    p.isConvex = isConvex(f);
    p.isConcave = isConcave(f);
    p.isSubAdditive = isSubAdditive(f, settings);
    p.isSuperAdditive = isSuperAdditive(f, settings);
    return p;
}

}  // namespace uppnc
