#include "uppnc/element.hpp"

#include <ostream>

namespace uppnc {

Point::Point(Rational t, Rational v) : time(std::move(t)), value(std::move(v)) {
    if (!time.isFinite())
        throw InvalidRepresentation("point time must be finite");
}

Segment::Segment(Rational a, Rational b, Rational rl, Rational s)
    : startTime(std::move(a)), endTime(std::move(b)), rightLimitAtStart(std::move(rl)), slope(std::move(s)) {
    if (!startTime.isFinite() || !endTime.isFinite())
        throw InvalidRepresentation("segment bounds must be finite");
    if (!(startTime < endTime))
        throw InvalidRepresentation("segment requires startTime < endTime, got ]" + startTime.toString() + ", " +
                                    endTime.toString() + "[");
    if (!slope.isFinite())
        throw InvalidRepresentation("segment slope must be finite");
    if (rightLimitAtStart.isInfinite() && !slope.isZero())
        throw InvalidRepresentation("infinite segment must have zero slope");
}

Rational Segment::valueAt(const Rational& t) const {
    if (isInfinite() || slope.isZero()) return rightLimitAtStart;
    return rightLimitAtStart + slope * (t - startTime);
}

Rational Segment::leftLimitAtEnd() const { return valueAt(endTime); }

const Rational& startOf(const Element& e) {
    return std::visit([](const auto& x) -> const Rational& {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Point>) return x.time;
        else return x.startTime;
    }, e);
}

const Rational& leadingValue(const Element& e) {
    return isPoint(e) ? std::get<Point>(e).value : std::get<Segment>(e).rightLimitAtStart;
}

const Rational& endOf(const Element& e) {
    return std::visit([](const auto& x) -> const Rational& {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Point>) return x.time;
        else return x.endTime;
    }, e);
}

Element shifted(const Element& e, const Rational& dt, const Rational& dv) {
    if (const auto* p = std::get_if<Point>(&e))
        return Point(p->time + dt, p->value + dv);
    const auto& s = std::get<Segment>(e);
    return Segment(s.startTime + dt, s.endTime + dt, s.rightLimitAtStart + dv, s.slope);
}

Element negated(const Element& e) {
    if (const auto* p = std::get_if<Point>(&e))
        return Point(p->time, -p->value);
    const auto& s = std::get<Segment>(e);
    return Segment(s.startTime, s.endTime, -s.rightLimitAtStart, -s.slope);
}

void appendClipped(std::vector<Element>& out, const Element& e, const Rational& from, const Rational& until) {
    if (const auto* p = std::get_if<Point>(&e)) {
        if (from <= p->time && p->time < until) out.push_back(*p);
        return;
    }
    const auto& s = std::get<Segment>(e);
    if (s.endTime <= from || s.startTime >= until) return;
    if (s.startTime >= from && s.endTime <= until) {
        out.push_back(s);
        return;
    }
    Rational a = s.startTime;
    if (a < from) {
        out.emplace_back(Point(from, s.valueAt(from)));
        a = from;
    }
    Rational b = min(s.endTime, until);
    if (a < b) out.emplace_back(Segment(a, b, s.valueAt(a), s.slope));
}

void appendMinPlusConvolution(std::vector<Element>& out, const Element& a, const Element& b) {
    const auto* pa = std::get_if<Point>(&a);
    const auto* pb = std::get_if<Point>(&b);
    if (pa && pb) {
        Rational v = pa->value + pb->value;
        if (!v.isPlusInfinity()) out.emplace_back(Point(pa->time + pb->time, std::move(v)));
        return;
    }
    if (pa || pb) {
        const Point& p = pa ? *pa : *pb;
        const Segment& s = pa ? std::get<Segment>(b) : std::get<Segment>(a);
        Rational v = s.rightLimitAtStart + p.value;
        if (v.isPlusInfinity()) return;
        Rational slope = v.isInfinite() ? Rational(0) : s.slope;
        out.emplace_back(Segment(s.startTime + p.time, s.endTime + p.time, std::move(v), std::move(slope)));
        return;
    }
    const Segment& sa = std::get<Segment>(a);
    const Segment& sb = std::get<Segment>(b);
    Rational start = sa.startTime + sb.startTime;
    Rational end = sa.endTime + sb.endTime;
    Rational v = sa.rightLimitAtStart + sb.rightLimitAtStart;
    if (v.isPlusInfinity()) return;
    if (v.isInfinite() || sa.slope == sb.slope) {
        Rational slope = v.isInfinite() ? Rational(0) : sa.slope;
        out.emplace_back(Segment(std::move(start), std::move(end), std::move(v), std::move(slope)));
        return;
    }
    // Lower slope first, then the steeper one: the convex chain of the two pieces.
    const Segment& low = sa.slope < sb.slope ? sa : sb;
    const Segment& high = sa.slope < sb.slope ? sb : sa;
    Rational mid = start + low.length();
    Rational midValue = v + low.slope * low.length();
    out.emplace_back(Segment(start, mid, v, low.slope));
    out.emplace_back(Point(mid, midValue));
    out.emplace_back(Segment(mid, std::move(end), std::move(midValue), high.slope));
}

std::ostream& operator<<(std::ostream& os, const Element& e) {
    if (const auto* p = std::get_if<Point>(&e))
        return os << "Point(" << p->time << ", " << p->value << ")";
    const auto& s = std::get<Segment>(e);
    return os << "Segment(" << s.startTime << ", " << s.endTime << ", " << s.rightLimitAtStart << ", " << s.slope << ")";
}

}  // namespace uppnc
