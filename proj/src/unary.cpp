#include "uppnc/unary.hpp"

#include <algorithm>

#include "uppnc/binary.hpp"
#include "uppnc/properties.hpp"

namespace uppnc {

namespace {

/// inf{t : f(t) >= y} over the elements of a nondecreasing function; +inf if never reached.
Rational firstReach(const std::vector<Element>& w, const Rational& y) {
    auto reaches = [&](const Element& e) {
        if (const auto* p = std::get_if<Point>(&e)) return p->value >= y;
        const auto& s = std::get<Segment>(e);
        return s.rightLimitAtStart >= y || (s.slope.sign() > 0 && s.leftLimitAtEnd() > y);
    };
    auto it = std::partition_point(w.begin(), w.end(), [&](const Element& e) { return !reaches(e); });
    if (it == w.end()) return Rational::plusInfinity();
    if (const auto* p = std::get_if<Point>(&*it)) return p->time;
    const auto& s = std::get<Segment>(*it);
    if (s.rightLimitAtStart >= y) return s.startTime;
    return s.startTime + (y - s.rightLimitAtStart) / s.slope;
}

/// sup{t : f(t) <= y} over the elements of a nondecreasing function; empty if no
/// instant qualifies, +inf if the last element still qualifies.
std::optional<Rational> lastBelow(const std::vector<Element>& w, const Rational& y) {
    auto holds = [&](const Element& e) {
        if (const auto* p = std::get_if<Point>(&e)) return p->value <= y;
        const auto& s = std::get<Segment>(e);
        return s.rightLimitAtStart < y || (s.slope.isZero() && s.rightLimitAtStart <= y);
    };
    auto it = std::partition_point(w.begin(), w.end(), holds);
    if (it == w.begin()) return std::nullopt;
    const Element& e = *(it - 1);
    if (it == w.end()) {
        const auto* s = std::get_if<Segment>(&e);
        if (!s || s->isInfinite() || s->leftLimitAtEnd() <= y) return Rational::plusInfinity();
    }
    if (const auto* p = std::get_if<Point>(&e)) return p->time;
    const auto& s = std::get<Segment>(e);
    if (s.slope.isZero() || s.isInfinite()) return s.endTime;
    return min(s.endTime, s.startTime + (y - s.rightLimitAtStart) / s.slope);
}

void requireNonDecreasing(const Curve& f, const char* what) {
    if (!isNonDecreasing(f)) throw PreconditionError(std::string(what) + " requires a nondecreasing curve");
}

Curve pseudoInverse(const Curve& f, bool lower) {
    requireNonDecreasing(f, lower ? "lower pseudo-inverse" : "upper pseudo-inverse");
    if (f.isUltimatelyMinusInfinite()) return plusInfiniteCurve();

    const Rational& T = f.pseudoPeriodStart();
    const Rational& d = f.pseudoPeriodLength();
    const Rational& c = f.pseudoPeriodHeight();
    Rational start, length, height, reach;
    if (f.isUltimatelyPlusInfinite() || c.isZero()) {
        // The inverse settles on a constant (or +inf) once y passes every finite value.
        Rational top = 0;
        for (const auto& e : f.extend(T + d).elements()) {
            const Rational& v = leadingValue(e);
            if (v.isFinite()) top = max(top, v);
            if (const auto* s = std::get_if<Segment>(&e); s && !s->isInfinite()) top = max(top, s->leftLimitAtEnd());
        }
        start = top + 1;
        length = 1;
        height = 0;
        reach = T + d;
    } else {
        Rational atStart = f.valueAt(T);
        start = max(Rational(0), atStart) + c;
        length = c;
        height = d;
        Rational periods = max(Rational(0), ((start + length - atStart) / c).ceil()) + 2;
        reach = T + periods * d;
    }
    Rational until = start + length;
    std::vector<Element> w = f.extend(reach).elements();

    std::vector<Rational> levels{Rational(0), until};
    auto noteLevel = [&](const Rational& v) {
        if (v.isFinite() && v.sign() > 0 && v < until) levels.push_back(v);
    };
    for (const auto& e : w) {
        noteLevel(leadingValue(e));
        if (const auto* s = std::get_if<Segment>(&e)) noteLevel(s->leftLimitAtEnd());
    }
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    auto eval = [&](const Rational& y) {
        return lower ? firstReach(w, y) : lastBelow(w, y).value_or(Rational(0));
    };
    std::vector<Element> out;
    for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
        const Rational& a = levels[i];
        const Rational& b = levels[i + 1];
        appendCompact(out, Point(a, eval(a)));
        // The inverse is affine between consecutive levels; two interior samples pin it down.
        Rational third = (b - a) / 3;
        Rational q1 = a + third, q2 = a + 2 * third;
        Rational v1 = eval(q1), v2 = eval(q2);
        if (v1.isInfinite()) {
            appendCompact(out, Segment(a, b, v1, 0));
        } else {
            Rational slope = (v2 - v1) / (q2 - q1);
            appendCompact(out, Segment(a, b, v1 - slope * third, slope));
        }
    }
    return Curve(Sequence::fromTrusted(std::move(out)), start, length, height).minimized();
}

/// The n-fold closure of a single element, as a curve that is +inf off its support.
Curve elementClosure(const Element& e) {
    const Rational plusInf = Rational::plusInfinity();
    if (const auto* p = std::get_if<Point>(&e)) {
        if (p->value.isPlusInfinity() || p->time.isZero()) return zeroDelayCurve();
        return Curve(Sequence::fromTrusted({Point(0, 0), Segment(0, p->time, plusInf, 0)}), 0, p->time, p->value);
    }
    const auto& s = std::get<Segment>(e);
    if (s.isInfinite()) return zeroDelayCurve();
    const Rational& a = s.startTime;
    const Rational& b = s.endTime;
    // Copies n and n + 1 overlap once n > a / (b - a); from there the cheaper
    // neighbour wins everywhere and the pattern repeats.
    Rational intercept = s.rightLimitAtStart - s.slope * a;
    Rational overlap = a * b / (b - a);
    Rational start, length, height;
    if (intercept.sign() >= 0) {
        length = b;
        height = s.leftLimitAtEnd();
        start = overlap + b;
    } else {
        length = a;
        height = s.rightLimitAtStart;
        start = overlap + a;
    }
    Rational until = start + length;
    std::vector<Element> copies{Point(0, 0)};
    for (long long n = 1;; ++n) {
        Rational k(n);
        // With a nonnegative intercept a higher copy only matters past the reach of the lower ones.
        if (k * a >= until || (intercept.sign() >= 0 && (k - 1) * b >= until)) break;
        copies.emplace_back(Segment(k * a, k * b, k * s.rightLimitAtStart, s.slope));
    }
    return Curve(lowerEnvelope(copies, 0, until, ComputationSettings::sequential()), start, length, height);
}

/// Curve equal to e on its support and +inf elsewhere.
Curve elementCurve(const Element& e) {
    std::vector<Element> one{e};
    Rational start = endOf(e) + 1;
    return Curve(fillGaps(one, 0, start + 1, Rational::plusInfinity()), start, 1, 0);
}

}  // namespace

Curve lowerPseudoInverse(const Curve& f) { return pseudoInverse(f, true); }
Curve upperPseudoInverse(const Curve& f) { return pseudoInverse(f, false); }

Curve subAdditiveClosure(const Curve& f, const ComputationSettings& settings) {
    if (f.valueAt(0).sign() < 0 || f.rightLimitAt(0).sign() < 0)
        throw PreconditionError("sub-additive closure requires f(0) >= 0 and f(0+) >= 0");
    for (const auto& e : f.baseSequence().elements())
        if (leadingValue(e).isMinusInfinity())
            throw PreconditionError("sub-additive closure of a curve with -inf values is -inf");

    if (f.valueAt(0).isZero() && isSubAdditive(f, settings)) return f;

    // The closure of a minimum is the convolution of the closures, so every
    // element is closed on its own and the results are convolved.
    std::vector<Curve> parts;
    const Rational& T = f.pseudoPeriodStart();
    if (T.sign() > 0)
        for (const auto& e : f.cut(0, T).elements()) parts.push_back(elementClosure(e));

    if (!f.isUltimatelyPlusInfinite()) {
        // A periodic element stands for e shifted by k(d, c) for all k >= 0, i.e.
        // e convolved with the closure of the point (d, c).
        Curve step = elementClosure(Point(f.pseudoPeriodLength(), f.pseudoPeriodHeight()));
        for (const auto& e : f.periodSequence().elements()) {
            if (leadingValue(e).isPlusInfinity()) continue;
            Curve repeated = convolution(convolution(elementCurve(e), elementClosure(e), settings), step, settings);
            parts.push_back(minimum(zeroDelayCurve(), repeated, settings));
        }
    }
    if (parts.empty()) return zeroDelayCurve();
    CurveOperation conv = [&](const Curve& x, const Curve& y) { return convolution(x, y, settings); };
    return parallelAggregate(std::move(parts), conv, settings).minimized();
}

Curve superAdditiveClosure(const Curve& f, const ComputationSettings& settings) {
    if (f.valueAt(0).sign() > 0 || f.rightLimitAt(0).sign() > 0)
        throw PreconditionError("super-additive closure requires f(0) <= 0 and f(0+) <= 0");
    return subAdditiveClosure(f.negated(), settings).negated();
}

Curve composition(const Curve& f, const Curve& g) {
    requireNonDecreasing(g, "composition");
    if (!isNonNegative(g)) throw PreconditionError("composition requires a nonnegative inner curve");

    // f evaluated at +inf, needed where g itself is +inf.
    auto outerAtInfinity = [&]() -> Rational {
        if (f.isUltimatelyPlusInfinite()) return Rational::plusInfinity();
        if (f.isUltimatelyMinusInfinite()) return Rational::minusInfinity();
        if (f.pseudoPeriodHeight().sign() > 0) return Rational::plusInfinity();
        if (f.pseudoPeriodHeight().sign() < 0) return Rational::minusInfinity();
        Sequence period = f.periodSequence().canonical();
        if (period.size() == 2 && period.segmentAt(0).slope.isZero() &&
            period.pointAt(0).value == period.segmentAt(0).rightLimitAtStart)
            return period.pointAt(0).value;
        throw PreconditionError("composition: outer curve has no limit at +inf but the inner curve reaches +inf");
    };
    std::optional<Rational> atInfinity;
    auto outer = [&](const Rational& y) -> Rational {
        if (y.isFinite()) return f.valueAt(y);
        if (!atInfinity) atInfinity = outerAtInfinity();
        return *atInfinity;
    };

    const Rational& Tg = g.pseudoPeriodStart();
    const Rational& dg = g.pseudoPeriodLength();
    const Rational& cg = g.pseudoPeriodHeight();
    Rational start = Tg, length = dg, height = 0;
    if (!g.isUltimatelyPlusInfinite() && cg.sign() > 0) {
        // From here on g stays inside f's periodic part.
        const Rational& Tf = f.pseudoPeriodStart();
        Rational periods = max(Rational(0), ((Tf - g.valueAt(Tg)) / cg).ceil()) + 2;
        Rational entry = firstReach(g.extend(Tg + periods * dg).elements(), Tf);
        start = max(Tg, entry + dg);
        if (!f.isUltimatelyInfinite()) {
            Rational ratio = cg / f.pseudoPeriodLength();
            Rational p(ratio.numerator()), q(ratio.denominator());
            length = q * dg;
            height = p * f.pseudoPeriodHeight();
        }
    }

    Rational until = start + length;
    Sequence inner = g.extend(until);
    Rational top = 0;
    for (const auto& e : inner.elements()) {
        if (leadingValue(e).isFinite()) top = max(top, leadingValue(e));
        if (const auto* s = std::get_if<Segment>(&e); s && !s->isInfinite()) top = max(top, s->leftLimitAtEnd());
    }
    Sequence outerSeq = f.extend(top + 1);

    std::vector<Element> out;
    for (const auto& e : inner.elements()) {
        if (const auto* p = std::get_if<Point>(&e)) {
            appendCompact(out, Point(p->time, outer(p->value)));
            continue;
        }
        const auto& s = std::get<Segment>(e);
        if (s.isInfinite() || s.slope.isZero()) {
            appendCompact(out, Segment(s.startTime, s.endTime, outer(s.rightLimitAtStart), 0));
            continue;
        }
        // g maps ]a, b[ increasingly onto ]v0, v1[; pull f's pieces back through it.
        Rational v0 = s.rightLimitAtStart, v1 = s.leftLimitAtEnd();
        auto toTime = [&](const Rational& y) { return s.startTime + (y - v0) / s.slope; };
        const Sequence preimage = outerSeq.cut(v0, v1);
        const auto& pieces = preimage.elements();
        for (std::size_t i = 1; i < pieces.size(); ++i) {
            if (const auto* p = std::get_if<Point>(&pieces[i])) {
                appendCompact(out, Point(toTime(p->time), p->value));
            } else {
                const auto& q = std::get<Segment>(pieces[i]);
                Rational slope = q.isInfinite() ? Rational(0) : q.slope * s.slope;
                Rational end = q.endTime == v1 ? s.endTime : toTime(q.endTime);
                appendCompact(out, Segment(toTime(q.startTime), end, q.rightLimitAtStart, slope));
            }
        }
    }
    return Curve(Sequence::fromTrusted(std::move(out)), start, length, height).minimized();
}

}  // namespace uppnc
