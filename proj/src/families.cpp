#include "uppnc/families.hpp"

#include <algorithm>

#include "uppnc/binary.hpp"
#include "uppnc/properties.hpp"

namespace uppnc {

namespace {

void require(bool condition, const char* message) {
    if (!condition) throw std::invalid_argument(message);
}

const Rational plusInf = Rational::plusInfinity();

/// Time of the last finite value of a curve that ends at +inf.
Rational lastFiniteInstant(const Curve& f) {
    const auto& elements = f.baseSequence().elements();
    for (auto it = elements.rbegin(); it != elements.rend(); ++it)
        if (const auto* p = std::get_if<Point>(&*it); p && p->value.isFinite()) return p->time;
    return 0;
}

/// Convex, finite, continuous, zero at the origin: convolution merges slopes.
bool mergeableConvex(const Curve& f) {
    return f.isFinite() && f.valueAt(0).isZero() && f.rightLimitAt(0).isZero() && isConvex(f);
}

Curve convexSlopeMerge(const Curve& f, const Curve& g) {
    struct Piece {
        Rational length;
        Rational slope;
    };
    Rational tailSlope = min(f.asymptoticRate(), g.asymptoticRate());
    std::vector<Piece> pieces;
    for (const Curve* x : {&f, &g}) {
        const Curve m = x->minimized();
        if (m.pseudoPeriodStart().isZero()) continue;
        for (const auto& e : m.cut(0, m.pseudoPeriodStart()).elements())
            if (const auto* s = std::get_if<Segment>(&e); s && s->slope < tailSlope)
                pieces.push_back({s->length(), s->slope});
    }
    std::stable_sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) { return a.slope < b.slope; });
    std::vector<Element> out{Point(0, 0)};
    Rational t = 0, v = 0;
    for (const auto& p : pieces) {
        appendCompact(out, Segment(t, t + p.length, v, p.slope));
        t += p.length;
        v += p.slope * p.length;
        appendCompact(out, Point(t, v));
    }
    appendCompact(out, Segment(t, t + 1, v, tailSlope));
    return Curve(Sequence::fromTrusted(std::move(out)), t, 1, tailSlope).minimized();
}

bool knownSubAdditive(const Curve& f) {
    switch (f.family()) {
        case CurveFamily::SigmaRho:
        case CurveFamily::FlowControl:
        case CurveFamily::Stair:
            return true;
        default:
            return false;
    }
}

}  // namespace

Curve rateLatency(const Rational& rate, const Rational& latency) {
    require(rate.isFinite() && rate.sign() > 0, "rate-latency curve needs a positive finite rate");
    require(latency.isFinite() && latency.sign() >= 0, "rate-latency curve needs a nonnegative finite latency");
    if (latency.isZero()) return linearCurve(rate).withFamily(CurveFamily::RateLatency);
    Sequence base({Point(0, 0), Segment(0, latency, 0, 0), Point(latency, 0), Segment(latency, latency + 1, 0, rate)});
    return Curve(std::move(base), latency, 1, rate, CurveFamily::RateLatency);
}

Curve sigmaRho(const Rational& sigma, const Rational& rho) {
    require(sigma.isFinite() && sigma.sign() >= 0, "sigma-rho curve needs a nonnegative finite burst");
    require(rho.isFinite() && rho.sign() >= 0, "sigma-rho curve needs a nonnegative finite rate");
    Sequence base({Point(0, 0), Segment(0, 2, sigma, rho)});
    return Curve(std::move(base), 1, 1, rho).minimized().withFamily(CurveFamily::SigmaRho);
}

Curve delayCurve(const Rational& theta) {
    require(theta.isFinite() && theta.sign() >= 0, "delay curve needs a nonnegative finite delay");
    if (theta.isZero()) return zeroDelayCurve();
    Sequence base({Point(0, 0), Segment(0, theta, 0, 0), Point(theta, 0), Segment(theta, theta + 2, plusInf, 0)});
    return Curve(std::move(base), theta + 1, 1, 0).minimized().withFamily(CurveFamily::Delay);
}

Curve stairCurve(const Rational& height, const Rational& width) {
    require(height.isFinite() && height.sign() > 0, "stair curve needs a positive finite step height");
    require(width.isFinite() && width.sign() > 0, "stair curve needs a positive finite step width");
    Sequence base({Point(0, 0), Segment(0, width, height, 0)});
    return Curve(std::move(base), 0, width, height, CurveFamily::Stair);
}

Curve flowControl(const Rational& rate, const Rational& latency, const Rational& window) {
    require(rate.isFinite() && rate.sign() > 0, "flow-control curve needs a positive finite rate");
    require(latency.isFinite() && latency.sign() > 0, "flow-control curve needs a positive finite latency");
    require(window.isFinite() && window.sign() > 0, "flow-control curve needs a positive finite window");
    if (window < rate * latency) {
        // The window is exhausted before the latency elapses: a staircase of
        // rate-limited risers, one per latency.
        Rational rise = latency + window / rate;
        Sequence base({Point(0, 0), Segment(0, latency, window, 0), Point(latency, window),
                       Segment(latency, rise, window, rate), Point(rise, 2 * window),
                       Segment(rise, 2 * latency, 2 * window, 0)});
        return Curve(std::move(base), latency, latency, window, CurveFamily::FlowControl);
    }
    // A large window keeps the shifted rate-latency curve sub-additive already.
    Sequence base({Point(0, 0), Segment(0, latency, window, 0), Point(latency, window),
                   Segment(latency, latency + 1, window, rate)});
    return Curve(std::move(base), latency, 1, rate).minimized().withFamily(CurveFamily::FlowControl);
}

Curve construct(CurveFamily family, std::span<const Rational> params) {
    auto expect = [&](std::size_t n) {
        if (params.size() != n)
            throw std::invalid_argument(std::string(toString(family)) + " takes " + std::to_string(n) + " parameters");
    };
    switch (family) {
        case CurveFamily::RateLatency: expect(2); return rateLatency(params[0], params[1]);
        case CurveFamily::SigmaRho: expect(2); return sigmaRho(params[0], params[1]);
        case CurveFamily::Delay: expect(1); return delayCurve(params[0]);
        case CurveFamily::Stair: expect(2); return stairCurve(params[0], params[1]);
        case CurveFamily::Constant: expect(1); return constantCurve(params[0]);
        case CurveFamily::FlowControl: expect(3); return flowControl(params[0], params[1], params[2]);
        case CurveFamily::Generic: break;
    }
    throw std::invalid_argument("generic curves are not built from parameters");
}

bool isBelow(const Curve& f, const Curve& g) {
    Rational rf = f.asymptoticRate(), rg = g.asymptoticRate();
    if (rf > rg) return false;
    Rational start = max(f.pseudoPeriodStart(), g.pseudoPeriodStart());
    Rational horizon;
    if (rf == rg || f.hasInfiniteGaps() || g.hasInfiniteGaps()) {
        horizon = start + rationalLcm(f.pseudoPeriodLength(), g.pseudoPeriodLength());
    } else if (rf.isMinusInfinity() || rg.isPlusInfinity()) {
        horizon = start + max(f.pseudoPeriodLength(), g.pseudoPeriodLength());
    } else {
        // Past the crossing bound the flatter f cannot catch up with g.
        Rational crossing = (driftRange(f.periodSequence(), rf).high - driftRange(g.periodSequence(), rg).low) / (rg - rf);
        horizon = max(start, crossing) + max(f.pseudoPeriodLength(), g.pseudoPeriodLength());
    }
    return supremumOfDifference(f.extend(horizon), g.extend(horizon)) <= Rational(0);
}

std::optional<Curve> checkTheoremOneApplicability(const Curve& f, const Curve& g) {
    if (!f.valueAt(0).isZero() || !g.valueAt(0).isZero()) return std::nullopt;
    if (knownSubAdditive(f) && isBelow(f, g)) return f;
    if (knownSubAdditive(g) && isBelow(g, f)) return g;
    return std::nullopt;
}

Curve dispatchConvolution(const Curve& f, const Curve& g, const ComputationSettings& settings) {
    if (!settings.useFastPaths) return convolution(f, g, settings);
    const Curve identity = zeroDelayCurve();
    if (g == identity) return f;
    if (f == identity) return g;

    bool zeroAtOrigin = f.valueAt(0).isZero() && g.valueAt(0).isZero();
    if (zeroAtOrigin && isConcave(f) && isConcave(g)) return minimum(f, g, settings);
    if (auto shortcut = checkTheoremOneApplicability(f, g)) return *shortcut;

    // A pure delay shifts a nondecreasing curve that starts at 0.
    auto delayed = [&](const Curve& delay, const Curve& other) -> std::optional<Curve> {
        if (delay.family() != CurveFamily::Delay || !other.valueAt(0).isZero() || !isNonDecreasing(other))
            return std::nullopt;
        return other.delayBy(lastFiniteInstant(delay)).minimized();
    };
    if (auto r = delayed(f, g)) return *r;
    if (auto r = delayed(g, f)) return *r;

    if (mergeableConvex(f) && mergeableConvex(g)) return convexSlopeMerge(f, g);
    return convolution(f, g, settings);
}

}  // namespace uppnc
