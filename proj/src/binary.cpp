#include "uppnc/binary.hpp"

#include <algorithm>

#include "uppnc/unary.hpp"

namespace uppnc {

namespace {

Rational rateTimes(const Rational& rate, const Rational& length) {
    return rate.isFinite() ? rate * length : Rational(0);
}

Curve combined(const Curve& f, const Curve& g, PointwiseOp op, const Rational& T, const Rational& d, const Rational& c) {
    Rational horizon = T + d;
    return Curve(combine(f.extend(horizon), g.extend(horizon), op), T, d, c).minimized();
}

std::vector<Element> withoutPlusInfinity(const std::vector<Element>& elements) {
    std::vector<Element> out;
    out.reserve(elements.size());
    for (const auto& e : elements) {
        const Rational& v = isPoint(e) ? std::get<Point>(e).value : std::get<Segment>(e).rightLimitAtStart;
        if (!v.isPlusInfinity()) out.push_back(e);
    }
    return out;
}

bool periodHasInfinity(const Sequence& base, const Rational& from) {
    for (const auto& e : base.elements()) {
        if (endOf(e) < from) continue;
        const Rational& v = isPoint(e) ? std::get<Point>(e).value : std::get<Segment>(e).rightLimitAtStart;
        if (v.isInfinite()) return true;
    }
    return false;
}

/// A partial result whose periodic window may hold no finite value at all;
/// such a window repeats with height 0.
Curve partCurve(const Sequence& base, const Rational& T, const Rational& d, const Rational& c) {
    bool finite = false;
    for (const auto& e : base.elements())
        if ((isPoint(e) ? startOf(e) >= T : endOf(e) > T) && leadingValue(e).isFinite()) finite = true;
    return Curve(base, T, d, finite ? c : Rational(0));
}

/// Envelope of a ⊗ b[range] for a single element a, clipped to [from, until[.
void convolveOne(EnvelopeAccumulator& acc, const Element& a, std::span<const Element> bs, const Rational& from,
                 const Rational& until, std::vector<Element>& scratch) {
    const auto* p = std::get_if<Point>(&a);
    if (p && p->value.isFinite()) {
        std::vector<Element> run;
        run.reserve(bs.size() + 1);
        for (const auto& b : bs) appendClipped(run, shifted(b, p->time, p->value), from, until);
        acc.add(std::move(run));
        return;
    }
    EnvelopeAccumulator local;
    for (const auto& b : bs) {
        scratch.clear();
        appendMinPlusConvolution(scratch, a, b);
        std::vector<Element> run;
        for (const auto& e : scratch) appendClipped(run, e, from, until);
        local.add(std::move(run));
    }
    acc.add(local.take());
}


/// Periodic part of f against the periodic part of g when their rates differ.
/// Past J periods of the flatter operand, trading time of the steeper one for
/// time of the flatter one never costs more, so only a prefix of the steeper
/// periodic part takes part. Empty when that prefix is not shorter than the
/// common hyperperiod.
std::optional<Curve> periodicBlockByDominance(const Curve& f, const Curve& g, const ComputationSettings& settings) {
    for (const Curve* x : {&f, &g})
        if (x->isUltimatelyInfinite() || x->hasInfiniteGaps()) return std::nullopt;
    if (f.asymptoticRate() == g.asymptoticRate()) return std::nullopt;
    const Curve& flat = f.asymptoticRate() < g.asymptoticRate() ? f : g;
    const Curve& steep = f.asymptoticRate() < g.asymptoticRate() ? g : f;
    const Rational& df = flat.pseudoPeriodLength();
    const Rational& cf = flat.pseudoPeriodHeight();
    Rational gap = steep.asymptoticRate() - flat.asymptoticRate();
    DriftRange drift = driftRange(steep.periodSequence(), steep.asymptoticRate());
    Rational J = max(Rational(1), ((drift.high - drift.low) / (df * gap)).ceil());
    Rational prefix = J * df;
    if (prefix >= rationalLcm(df, steep.pseudoPeriodLength())) return std::nullopt;

    const Rational& Tf = flat.pseudoPeriodStart();
    const Rational& Tg = steep.pseudoPeriodStart();
    Rational start = Tf + Tg;
    Rational end = start + prefix + df;
    auto core = convolveElements(flat.cut(Tf, Tf + df).elements(), steep.cut(Tg, Tg + prefix).elements(), start,
                                 start + df + prefix, settings);
    EnvelopeAccumulator acc;
    for (Rational i = 0; i <= J; i += 1) {
        std::vector<Element> run;
        run.reserve(core.size());
        for (const auto& e : core) appendClipped(run, shifted(e, i * df, i * cf), start, end);
        acc.add(std::move(run));
    }
    return partCurve(fillGaps(acc.take(), 0, end, Rational::plusInfinity()), start + prefix, df, cf);
}

}  // namespace

DriftRange driftRange(const Sequence& s, const Rational& rate) {
    std::optional<Rational> low, high;
    auto note = [&](const Rational& v, const Rational& t) {
        if (!v.isFinite()) return;
        Rational x = v - rate * t;
        if (!low || x < *low) low = x;
        if (!high || x > *high) high = x;
    };
    for (const auto& e : s.elements()) {
        if (const auto* p = std::get_if<Point>(&e)) {
            note(p->value, p->time);
        } else {
            const auto& seg = std::get<Segment>(e);
            note(seg.rightLimitAtStart, seg.startTime);
            note(seg.leftLimitAtEnd(), seg.endTime);
        }
    }
    if (!low) throw ArithmeticError("drift of a sequence without finite values");
    return {*low, *high};
}

Curve minimum(const Curve& f, const Curve& g, const ComputationSettings&) {
    Rational rf = f.asymptoticRate(), rg = g.asymptoticRate();
    if (rf == rg) {
        Rational d = rationalLcm(f.pseudoPeriodLength(), g.pseudoPeriodLength());
        return combined(f, g, PointwiseOp::Minimum, max(f.pseudoPeriodStart(), g.pseudoPeriodStart()), d,
                        rateTimes(rf, d));
    }
    const Curve& low = rf < rg ? f : g;
    const Curve& high = rf < rg ? g : f;
    Rational lowRate = min(rf, rg), highRate = max(rf, rg);
    Rational T;
    if (lowRate.isMinusInfinity()) {
        T = low.pseudoPeriodStart();
    } else if (highRate.isPlusInfinity()) {
        T = max(low.pseudoPeriodStart(), high.pseudoPeriodStart());
    } else {
        // Past this instant the steeper curve stays above the flatter one
        // wherever both are finite.
        Rational lowTop = driftRange(low.periodSequence(), lowRate).high;
        Rational highBottom = driftRange(high.periodSequence(), highRate).low;
        T = max(max(low.pseudoPeriodStart(), high.pseudoPeriodStart()), (lowTop - highBottom) / (highRate - lowRate));
        if (low.hasInfiniteGaps()) {
            // If the steeper curve shows through a gap of the flatter one, the
            // two regimes drift apart and the minimum never becomes periodic.
            Rational end = T + rationalLcm(low.pseudoPeriodLength(), high.pseudoPeriodLength());
            Sequence flat = low.cut(T, end);
            if (lastDisagreement(combine(flat, high.cut(T, end), PointwiseOp::Minimum), flat))
                throw ArithmeticError("minimum of curves with different rates is not ultimately pseudo-periodic: "
                                      "the steeper one fills gaps of the flatter one");
        }
    }
    return combined(f, g, PointwiseOp::Minimum, T, low.pseudoPeriodLength(), low.pseudoPeriodHeight());
}

Curve maximum(const Curve& f, const Curve& g, const ComputationSettings& settings) {
    return minimum(f.negated(), g.negated(), settings).negated();
}

Curve minimumMany(std::vector<Curve> fs, const ComputationSettings& settings) {
    return parallelAggregate(
        std::move(fs), [&](const Curve& a, const Curve& b) { return minimum(a, b, settings); }, settings);
}

Curve maximumMany(std::vector<Curve> fs, const ComputationSettings& settings) {
    return parallelAggregate(
        std::move(fs), [&](const Curve& a, const Curve& b) { return maximum(a, b, settings); }, settings);
}

Curve add(const Curve& f, const Curve& g, const ComputationSettings&) {
    Rational d = rationalLcm(f.pseudoPeriodLength(), g.pseudoPeriodLength());
    Rational c = f.isUltimatelyInfinite() || g.isUltimatelyInfinite()
                     ? Rational(0)
                     : f.asymptoticRate() * d + g.asymptoticRate() * d;
    return combined(f, g, PointwiseOp::Add, max(f.pseudoPeriodStart(), g.pseudoPeriodStart()), d, c);
}

Curve addMany(std::vector<Curve> fs, const ComputationSettings& settings) {
    return parallelAggregate(
        std::move(fs), [&](const Curve& a, const Curve& b) { return add(a, b, settings); }, settings);
}

Curve subtract(const Curve& f, const Curve& g, SubtractionMode mode, const ComputationSettings& settings) {
    Rational d = rationalLcm(f.pseudoPeriodLength(), g.pseudoPeriodLength());
    Rational c = f.isUltimatelyInfinite() || g.isUltimatelyInfinite()
                     ? Rational(0)
                     : f.asymptoticRate() * d - g.asymptoticRate() * d;
    Curve diff = combined(f, g, PointwiseOp::Subtract, max(f.pseudoPeriodStart(), g.pseudoPeriodStart()), d, c);
    if (mode == SubtractionMode::NonNegative) return maximum(diff, zeroCurve(), settings);
    return diff;
}

std::vector<Element> convolveElements(const std::vector<Element>& aIn, const std::vector<Element>& bIn,
                                      const Rational& from, const Rational& until,
                                      const ComputationSettings& settings) {
    std::vector<Element> a = withoutPlusInfinity(aIn);
    std::vector<Element> b = withoutPlusInfinity(bIn);
    if (a.empty() || b.empty() || !(from < until)) return {};

    std::size_t work = a.size() * b.size();
    std::size_t buckets = settings.shouldParallelize(work) ? std::size_t{settings.effectiveWorkers()} * 4 : 1;
    std::vector<Rational> bounds;
    for (std::size_t k = 0; k <= buckets; ++k)
        bounds.push_back(from + (until - from) * Rational(static_cast<long long>(k), static_cast<long long>(buckets)));
    std::vector<std::vector<Element>> pieces(buckets);

    parallelFor(buckets, work, settings, [&](std::size_t k) {
        const Rational& lo = bounds[k];
        const Rational& hi = bounds[k + 1];
        EnvelopeAccumulator acc;
        std::vector<Element> scratch;
        for (const auto& x : a) {
            const Rational& xs = startOf(x);
            const Rational& xe = endOf(x);
            if (xs + startOf(b.front()) >= hi) break;
            // Elements of b whose convolution with x can reach [lo, hi[.
            auto first = std::partition_point(b.begin(), b.end(),
                                              [&](const Element& y) { return endOf(y) + xe < lo; });
            auto last = std::partition_point(first, b.end(),
                                             [&](const Element& y) { return startOf(y) + xs < hi; });
            if (first == last) continue;
            convolveOne(acc, x, std::span<const Element>(&*first, static_cast<std::size_t>(last - first)), lo, hi,
                        scratch);
        }
        pieces[k] = acc.take();
    });

    std::vector<Element> out;
    for (auto& piece : pieces)
        for (auto& e : piece) appendCompact(out, std::move(e));
    return out;
}

Curve convolution(const Curve& f, const Curve& g, const ComputationSettings& settings) {
    const Rational& Tf = f.pseudoPeriodStart();
    const Rational& Tg = g.pseudoPeriodStart();
    const Rational& df = f.pseudoPeriodLength();
    const Rational& dg = g.pseudoPeriodLength();
    const Rational plusInf = Rational::plusInfinity();
    std::vector<Curve> parts;

    // Transient of f against transient of g: finite support, +inf afterwards.
    if (Tf.sign() > 0 && Tg.sign() > 0) {
        Rational end = Tf + Tg;
        auto out = convolveElements(f.cut(0, Tf).elements(), g.cut(0, Tg).elements(), 0, end, settings);
        parts.emplace_back(fillGaps(out, 0, end + 1, plusInf), end, 1, 0);
    }
    // Transient of one operand against the periodic part of the other.
    auto transientByPeriodic = [&](const Curve& x, const Curve& y) {
        const Rational& Tx = x.pseudoPeriodStart();
        const Rational& Ty = y.pseudoPeriodStart();
        const Rational& dy = y.pseudoPeriodLength();
        if (Tx.sign() == 0 || y.isUltimatelyPlusInfinite()) return;
        Rational end = Tx + Ty + dy;
        auto out = convolveElements(x.cut(0, Tx).elements(), y.cut(Ty, end).elements(), Ty, end, settings);
        parts.push_back(partCurve(fillGaps(out, 0, end, plusInf), Tx + Ty, dy, y.pseudoPeriodHeight()));
    };
    transientByPeriodic(f, g);
    transientByPeriodic(g, f);

    // Periodic parts against each other, over one common hyperperiod of each.
    std::optional<Curve> dominated;
    if (settings.useFastPaths) dominated = periodicBlockByDominance(f, g, settings);
    if (dominated) {
        parts.push_back(std::move(*dominated));
    } else if (!f.isUltimatelyPlusInfinite() && !g.isUltimatelyPlusInfinite()) {
        Rational d = rationalLcm(df, dg);
        Rational start = Tf + Tg;
        Rational c = rateTimes(min(f.asymptoticRate(), g.asymptoticRate()), d);
        auto block = convolveElements(f.cut(Tf, Tf + d).elements(), g.cut(Tg, Tg + d).elements(), start,
                                      start + 2 * d, settings);
        std::vector<Element> repeated;
        for (const auto& e : block) appendClipped(repeated, shifted(e, d, c), start + d, start + 2 * d);
        auto merged = mergeLowerEnvelope(block, repeated);
        parts.push_back(partCurve(fillGaps(merged, 0, start + 2 * d, plusInf), start + d, d, c));
    }

    if (parts.empty()) return plusInfiniteCurve();
    // Equal-rate parts first, so gaps are filled before a steeper part is met.
    std::stable_sort(parts.begin(), parts.end(),
                     [](const Curve& x, const Curve& y) { return x.asymptoticRate() < y.asymptoticRate(); });
    Curve result = parts.front().minimized();
    for (std::size_t i = 1; i < parts.size(); ++i) result = minimum(result, parts[i], settings);
    return result;
}

Curve deconvolution(const Curve& f, const Curve& g, const ComputationSettings& settings) {
    Rational rf = f.asymptoticRate(), rg = g.asymptoticRate();
    if (rf > rg) return plusInfiniteCurve();
    const Rational& Tf = f.pseudoPeriodStart();
    const Rational& Tg = g.pseudoPeriodStart();

    // Beyond `reach`, f(t + u) - g(u) never exceeds what smaller u already achieve.
    Rational reach;
    if (rg.isPlusInfinity()) {
        reach = Tg;
    } else if (rf.isMinusInfinity()) {
        reach = Tf;
    } else if (rf == rg) {
        reach = max(Tf, Tg) + rationalLcm(f.pseudoPeriodLength(), g.pseudoPeriodLength());
    } else {
        DriftRange fr = driftRange(f.periodSequence(), rf);
        DriftRange gr = driftRange(g.periodSequence(), rg);
        reach = max(Tf, Tg) + ((fr.high - fr.low) + (gr.high - gr.low)) / (rg - rf);
    }

    Rational horizon = Tf + f.pseudoPeriodLength();
    std::vector<Element> lhs = f.extend(horizon + reach).negated().elements();

    // g mirrored onto [-reach, 0]: the element list of v -> g(-v).
    std::vector<Element> mirrored{Point(-reach, g.valueAt(reach))};
    if (reach.sign() > 0) {
        const auto& elements = g.extend(reach).elements();
        for (auto it = elements.rbegin(); it != elements.rend(); ++it) {
            if (const auto* p = std::get_if<Point>(&*it)) {
                mirrored.emplace_back(Point(-p->time, p->value));
            } else {
                const auto& s = std::get<Segment>(*it);
                Rational slope = s.isInfinite() ? Rational(0) : -s.slope;
                mirrored.emplace_back(Segment(-s.endTime, -s.startTime, s.leftLimitAtEnd(), slope));
            }
        }
    }

    auto out = convolveElements(lhs, mirrored, 0, horizon, settings);
    Sequence base = fillGaps(out, 0, horizon, Rational::plusInfinity()).negated();
    Rational c = periodHasInfinity(base, Tf) ? Rational(0) : f.pseudoPeriodHeight();
    return Curve(std::move(base), Tf, f.pseudoPeriodLength(), c).minimized();
}

Curve maxPlusConvolution(const Curve& f, const Curve& g, const ComputationSettings& settings) {
    return convolution(f.negated(), g.negated(), settings).negated();
}

Curve maxPlusDeconvolution(const Curve& f, const Curve& g, const ComputationSettings& settings) {
    return deconvolution(f.negated(), g.negated(), settings).negated();
}

Rational supremumOfDifference(const Sequence& a, const Sequence& b) {
    std::vector<Rational> times;
    for (std::size_t k = 0; k < a.pointCount(); ++k) times.push_back(a.pointAt(k).time);
    for (std::size_t k = 0; k < b.pointCount(); ++k) times.push_back(b.pointAt(k).time);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());

    Rational best = Rational::minusInfinity();
    auto consider = [&](const Rational& x, const Rational& y) {
        // Coinciding infinities of the same sign carry no information.
        if (x.isInfinite() && x == y) return;
        best = max(best, x - y);
    };
    for (const auto& t : times) {
        consider(a.valueAt(t), b.valueAt(t));
        consider(a.rightLimitAt(t), b.rightLimitAt(t));
        if (t > a.definedFrom()) consider(a.leftLimitAt(t), b.leftLimitAt(t));
    }
    const Rational& end = a.definedUntil();
    consider(a.leftLimitAt(end), b.leftLimitAt(end));
    return best;
}

Rational verticalDeviation(const Curve& alpha, const Curve& beta) {
    if (alpha.asymptoticRate() > beta.asymptoticRate()) return Rational::plusInfinity();
    Rational horizon = max(alpha.pseudoPeriodStart(), beta.pseudoPeriodStart()) +
                       rationalLcm(alpha.pseudoPeriodLength(), beta.pseudoPeriodLength());
    return supremumOfDifference(alpha.extend(horizon), beta.extend(horizon));
}

Rational horizontalDeviation(const Curve& alpha, const Curve& beta) {
    Curve reach = composition(lowerPseudoInverse(beta), alpha);
    return max(Rational(0), verticalDeviation(reach, linearCurve(1)));
}

}  // namespace uppnc
