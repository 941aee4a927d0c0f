#include "uppnc/curve.hpp"

#include <algorithm>
#include <ostream>

namespace uppnc {

std::string_view toString(CurveFamily family) {
    switch (family) {
        case CurveFamily::Generic: return "generic";
        case CurveFamily::RateLatency: return "rateLatency";
        case CurveFamily::SigmaRho: return "sigmaRho";
        case CurveFamily::Delay: return "delay";
        case CurveFamily::Stair: return "stair";
        case CurveFamily::Constant: return "constant";
        case CurveFamily::FlowControl: return "flowControl";
    }
    return "generic";
}

Curve::Curve(Sequence baseSequence, Rational T, Rational d, Rational c, CurveFamily family)
    : base_(std::move(baseSequence)), T_(std::move(T)), d_(std::move(d)), c_(std::move(c)), family_(family) {
    if (base_.empty()) throw InvalidRepresentation("curve requires a non-empty base sequence");
    if (!T_.isFinite() || T_.sign() < 0) throw InvalidRepresentation("pseudo-period start must be finite and >= 0");
    if (!d_.isFinite() || d_.sign() <= 0) throw InvalidRepresentation("pseudo-period length must be finite and > 0");
    if (!c_.isFinite()) throw InvalidRepresentation("pseudo-period height must be finite");
    if (!base_.definedFrom().isZero())
        throw InvalidRepresentation("base sequence must start at 0");
    if (base_.definedUntil() != T_ + d_)
        throw InvalidRepresentation("base sequence must end at T + d = " + (T_ + d_).toString() + ", ends at " +
                                    base_.definedUntil().toString());
    period_ = base_.cut(T_, T_ + d_);

    bool anyPlus = false, anyMinus = false, anyFinite = false;
    auto note = [&](const Rational& v) {
        if (v.isPlusInfinity()) anyPlus = true;
        else if (v.isMinusInfinity()) anyMinus = true;
        else anyFinite = true;
    };
    for (const auto& e : period_.elements()) {
        if (const auto* p = std::get_if<Point>(&e)) note(p->value);
        else note(std::get<Segment>(e).rightLimitAtStart);
    }
    if (anyFinite) tail_ = anyPlus || anyMinus ? Tail::Gapped : Tail::Finite;
    else if (anyPlus && anyMinus) tail_ = Tail::Gapped;
    else tail_ = anyPlus ? Tail::PlusInfinite : Tail::MinusInfinite;
    if (isUltimatelyInfinite() && !c_.isZero())
        throw InvalidRepresentation("an infinite pseudo-period must have height 0");
}

Curve Curve::withFamily(CurveFamily family) const {
    Curve out = *this;
    out.family_ = family;
    return out;
}

Rational Curve::valueAt(const Rational& t) const {
    if (!t.isFinite() || t.sign() < 0) throw std::out_of_range("curve evaluated at " + t.toString());
    Rational end = T_ + d_;
    if (t < end) return base_.valueAt(t);
    Rational k = ((t - T_) / d_).floor();
    return period_.valueAt(t - k * d_) + k * c_;
}

Rational Curve::leftLimitAt(const Rational& t) const {
    if (!t.isFinite() || t.sign() <= 0) throw std::out_of_range("left limit of curve at " + t.toString());
    Rational end = T_ + d_;
    if (t <= end) return base_.leftLimitAt(t);
    Rational k = ((t - T_) / d_).ceil() - 1;
    return period_.leftLimitAt(t - k * d_) + k * c_;
}

Rational Curve::rightLimitAt(const Rational& t) const {
    if (!t.isFinite() || t.sign() < 0) throw std::out_of_range("right limit of curve at " + t.toString());
    Rational end = T_ + d_;
    if (t < end) return base_.rightLimitAt(t);
    Rational k = ((t - T_) / d_).floor();
    return period_.rightLimitAt(t - k * d_) + k * c_;
}

void Curve::forEachElement(const Rational& from, const Rational& until,
                           const std::function<void(const Element&)>& fn) const {
    if (!from.isFinite() || !until.isFinite() || from.sign() < 0 || !(from < until))
        throw std::invalid_argument("invalid curve window [" + from.toString() + ", " + until.toString() + "[");
    std::vector<Element> buffer;
    auto emitFrom = [&](const std::vector<Element>& elements, const Rational& dt, const Rational& dv) {
        // Skip elements that end before the window starts.
        auto it = std::partition_point(elements.begin(), elements.end(),
                                       [&](const Element& e) { return endOf(e) + dt < from; });
        for (; it != elements.end(); ++it) {
            if (startOf(*it) + dt >= until) break;
            buffer.clear();
            if (dt.isZero() && dv.isZero()) appendClipped(buffer, *it, from, until);
            else appendClipped(buffer, shifted(*it, dt, dv), from, until);
            for (const auto& e : buffer) fn(e);
        }
    };

    Rational periodEnd = T_ + d_;
    if (from < periodEnd) emitFrom(base_.elements(), Rational(0), Rational(0));
    if (until <= periodEnd) return;

    Rational k = from > periodEnd ? ((from - T_) / d_).floor() : Rational(1);
    for (Rational start = T_ + k * d_; start < until; k += 1, start += d_)
        emitFrom(period_.elements(), k * d_, k * c_);
}

Sequence Curve::extend(const Rational& horizon) const { return cut(Rational(0), horizon); }

Sequence Curve::cut(const Rational& from, const Rational& until) const {
    std::vector<Element> out;
    forEachElement(from, until, [&](const Element& e) { appendCompact(out, e); });
    return Sequence::fromTrusted(std::move(out));
}

Sequence Curve::periodSequence() const { return period_; }

Curve Curve::delayBy(const Rational& theta) const {
    if (!theta.isFinite() || theta.sign() < 0) throw std::invalid_argument("delay must be finite and >= 0");
    if (theta.isZero()) return *this;
    std::vector<Element> out{Point(0, 0), Segment(0, theta, 0, 0)};
    for (const auto& e : base_.elements()) appendCompact(out, shifted(e, theta, Rational(0)));
    return Curve(Sequence::fromTrusted(std::move(out)), T_ + theta, d_, c_);
}

Curve Curve::anticipateBy(const Rational& theta) const {
    if (!theta.isFinite() || theta.sign() < 0) throw std::invalid_argument("anticipation must be finite and >= 0");
    if (theta.isZero()) return *this;
    Rational start = max(Rational(0), T_ - theta);
    return Curve(cut(theta, theta + start + d_).shifted(-theta, Rational(0)), start, d_, c_);
}

Curve Curve::verticalShift(const Rational& v) const {
    if (!v.isFinite()) throw std::invalid_argument("vertical shift must be finite");
    CurveFamily keep = family_ == CurveFamily::Constant ? family_ : CurveFamily::Generic;
    return Curve(base_.shifted(Rational(0), v), T_, d_, c_, keep);
}

Curve Curve::negated() const { return Curve(base_.negated(), T_, d_, -c_); }

bool Curve::isUltimatelyPlusInfinite() const { return tail_ == Tail::PlusInfinite; }
bool Curve::isUltimatelyMinusInfinite() const { return tail_ == Tail::MinusInfinite; }

bool Curve::isFinite() const {
    for (const auto& e : base_.elements()) {
        const Rational& v = isPoint(e) ? std::get<Point>(e).value : std::get<Segment>(e).rightLimitAtStart;
        if (!v.isFinite()) return false;
    }
    return true;
}

Rational Curve::asymptoticRate() const {
    if (isUltimatelyPlusInfinite()) return Rational::plusInfinity();
    if (isUltimatelyMinusInfinite()) return Rational::minusInfinity();
    return c_ / d_;
}

Curve Curve::minimized() const {
    Rational periodEnd = T_ + d_;
    Sequence window = extend(T_ + 2 * d_);

    std::size_t breakpoints = 0;
    for (std::size_t k = 0; k < window.pointCount(); ++k) {
        const Rational& t = window.pointAt(k).time;
        if (T_ < t && t <= periodEnd) ++breakpoints;
    }

    Rational length, height;
    if (breakpoints == 0) {
        length = 1;
        height = isUltimatelyInfinite() ? Rational(0) : c_ / d_;
    } else {
        Sequence reference = window.cut(T_, periodEnd);
        for (std::size_t k = breakpoints; k >= 1; --k) {
            if (breakpoints % k != 0) continue;
            Rational step = d_ / Rational(static_cast<long long>(k));
            Rational rise = c_ / Rational(static_cast<long long>(k));
            if (k == 1 || !lastDisagreement(window.cut(T_ + step, periodEnd + step).shifted(-step, -rise), reference)) {
                length = step;
                height = rise;
                break;
            }
        }
    }

    if (length > d_) window = extend(T_ + 2 * length);

    Rational start = 0;
    if (T_.sign() > 0) {
        Sequence shiftedBack = window.cut(length, T_ + length).shifted(-length, -height);
        if (auto last = lastDisagreement(shiftedBack, window.cut(Rational(0), T_))) {
            if (!last->isPoint) {
                start = last->intervalEnd;
            } else {
                start = last->time + length;
                for (std::size_t k = 0; k < window.pointCount(); ++k) {
                    const Rational& t = window.pointAt(k).time;
                    if (t > last->time) {
                        start = min(start, t);
                        break;
                    }
                }
            }
        }
    }
    return Curve(extend(start + length), start, length, height, family_);
}

bool equivalent(const Curve& f, const Curve& g) {
    if (f.asymptoticRate() != g.asymptoticRate()) return false;
    Rational horizon = max(f.pseudoPeriodStart(), g.pseudoPeriodStart()) +
                       2 * rationalLcm(f.pseudoPeriodLength(), g.pseudoPeriodLength());
    return !lastDisagreement(f.extend(horizon), g.extend(horizon)).has_value();
}

Curve zeroCurve() { return constantCurve(Rational(0)); }

Curve constantCurve(const Rational& value) {
    return Curve(Sequence::constant(0, 1, value), 0, 1, 0, CurveFamily::Constant);
}

Curve zeroDelayCurve() {
    return Curve(Sequence::fromTrusted({Point(0, 0), Segment(0, 2, Rational::plusInfinity(), 0)}), 1, 1, 0,
                 CurveFamily::Delay);
}

Curve maxPlusIdentity() {
    return Curve(Sequence::fromTrusted({Point(0, 0), Segment(0, 2, Rational::minusInfinity(), 0)}), 1, 1, 0);
}

Curve linearCurve(const Rational& slope) {
    if (!slope.isFinite()) throw std::invalid_argument("linear curve needs a finite slope");
    return Curve(Sequence::fromTrusted({Point(0, 0), Segment(0, 1, 0, slope)}), 0, 1, slope);
}

Curve plusInfiniteCurve() { return constantCurve(Rational::plusInfinity()); }

std::ostream& operator<<(std::ostream& os, const Curve& c) {
    return os << "Curve(T=" << c.pseudoPeriodStart() << ", d=" << c.pseudoPeriodLength()
              << ", c=" << c.pseudoPeriodHeight() << ", base=" << c.baseSequence() << ")";
}

}  // namespace uppnc
