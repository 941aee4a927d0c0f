#include "uppnc/sequence.hpp"

#include <algorithm>
#include <ostream>

namespace uppnc {

namespace {

/// Monotone cursor over a sorted list of disjoint elements. Queries must be issued
/// in nondecreasing time order, alternating instants and open intervals.
class Cursor {
public:
    explicit Cursor(const std::vector<Element>& elements) : elements_(elements) {}

    /// Value at instant t, if some element covers it.
    const Rational* valueAt(const Rational& t, Rational& scratch) {
        while (i_ < elements_.size()) {
            const Element& e = elements_[i_];
            const Rational& end = endOf(e);
            if (end < t || (isSegment(e) && end == t)) { ++i_; continue; }
            break;
        }
        if (i_ == elements_.size()) return nullptr;
        const Element& e = elements_[i_];
        if (const auto* p = std::get_if<Point>(&e))
            return p->time == t ? &p->value : nullptr;
        const auto& s = std::get<Segment>(e);
        if (s.startTime < t) {
            scratch = s.valueAt(t);
            return &scratch;
        }
        return nullptr;
    }

    /// Segment covering ]u, v[, if any; boundaries are assumed to include all element ends.
    const Segment* segmentOver(const Rational& u) {
        while (i_ < elements_.size() && endOf(elements_[i_]) <= u) ++i_;
        if (i_ == elements_.size()) return nullptr;
        const auto* s = std::get_if<Segment>(&elements_[i_]);
        if (s && s->startTime <= u) return s;
        return nullptr;
    }

private:
    const std::vector<Element>& elements_;
    std::size_t i_ = 0;
};

std::vector<Rational> boundaryTimes(const std::vector<Element>& a, const std::vector<Element>& b) {
    auto collect = [](const std::vector<Element>& v) {
        std::vector<Rational> out;
        out.reserve(v.size() * 2);
        for (const auto& e : v) {
            const Rational& s = startOf(e);
            if (out.empty() || out.back() != s) out.push_back(s);
            if (isSegment(e)) out.push_back(endOf(e));
        }
        return out;
    };
    std::vector<Rational> ta = collect(a);
    std::vector<Rational> tb = collect(b);
    std::vector<Rational> all;
    all.reserve(ta.size() + tb.size());
    std::merge(ta.begin(), ta.end(), tb.begin(), tb.end(), std::back_inserter(all));
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

template <class OnPoint, class OnInterval>
void sweep(const std::vector<Element>& a, const std::vector<Element>& b, OnPoint onPoint, OnInterval onInterval) {
    std::vector<Rational> times = boundaryTimes(a, b);
    Cursor ca(a), cb(b);
    Rational sa, sb;
    for (std::size_t k = 0; k < times.size(); ++k) {
        const Rational& t = times[k];
        const Rational* va = ca.valueAt(t, sa);
        const Rational* vb = cb.valueAt(t, sb);
        if (va || vb) onPoint(t, va, vb);
        if (k + 1 < times.size())
            onInterval(t, times[k + 1], ca.segmentOver(t), cb.segmentOver(t));
    }
}

/// Appends the lower of two affine pieces over ]u, v[, splitting at a crossing.
void appendLowerOf(std::vector<Element>& out, const Rational& u, const Rational& v, const Segment& A, const Segment& B) {
    Rational a0 = A.valueAt(u), a1 = A.valueAt(v);
    Rational b0 = B.valueAt(u), b1 = B.valueAt(v);
    if (a0 <= b0 && a1 <= b1) {
        appendCompact(out, Segment(u, v, a0, A.isInfinite() ? Rational(0) : A.slope));
        return;
    }
    if (b0 <= a0 && b1 <= a1) {
        appendCompact(out, Segment(u, v, b0, B.isInfinite() ? Rational(0) : B.slope));
        return;
    }
    // Both finite and crossing strictly inside ]u, v[.
    Rational x = u + (b0 - a0) / (A.slope - B.slope);
    const Segment& first = a0 < b0 ? A : B;
    const Segment& second = a0 < b0 ? B : A;
    Rational first0 = a0 < b0 ? a0 : b0;
    Rational xv = first.valueAt(x);
    appendCompact(out, Segment(u, x, first0, first.slope));
    appendCompact(out, Point(x, xv));
    appendCompact(out, Segment(x, v, xv, second.slope));
}

}  // namespace

Sequence::Sequence(std::vector<Element> elements) : elements_(std::move(elements)) {
    if (elements_.empty())
        throw InvalidRepresentation("sequence must contain at least one point and one segment");
    if (elements_.size() % 2 != 0)
        throw InvalidRepresentation("sequence must alternate points and segments, ending with a segment");
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        bool wantPoint = i % 2 == 0;
        if (wantPoint != isPoint(elements_[i]))
            throw InvalidRepresentation("sequence element " + std::to_string(i) + " breaks point/segment alternation");
        if (i > 0 && endOf(elements_[i - 1]) != startOf(elements_[i]))
            throw InvalidRepresentation("sequence element " + std::to_string(i) + " is not contiguous with its predecessor");
    }
}

Sequence Sequence::fromTrusted(std::vector<Element> elements) {
    Sequence s;
    s.elements_ = std::move(elements);
    return s;
}

Sequence Sequence::constant(const Rational& from, const Rational& until, const Rational& value) {
    return fromTrusted({Point(from, value), Segment(from, until, value, 0)});
}

void Sequence::checkDomain(const Rational& t) const {
    if (t < definedFrom() || t >= definedUntil())
        throw std::out_of_range("time " + t.toString() + " outside sequence domain [" + definedFrom().toString() + ", " +
                                definedUntil().toString() + "[");
}

std::size_t Sequence::breakpointIndex(const Rational& t) const {
    std::size_t lo = 0, hi = pointCount();
    while (hi - lo > 1) {
        std::size_t mid = (lo + hi) / 2;
        if (pointAt(mid).time <= t) lo = mid; else hi = mid;
    }
    return lo;
}

Rational Sequence::valueAt(const Rational& t) const {
    checkDomain(t);
    std::size_t k = breakpointIndex(t);
    const Point& p = pointAt(k);
    return p.time == t ? p.value : segmentAt(k).valueAt(t);
}

Rational Sequence::leftLimitAt(const Rational& t) const {
    if (t <= definedFrom() || t > definedUntil())
        throw std::out_of_range("left limit at " + t.toString() + " outside sequence domain");
    std::size_t k = breakpointIndex(t);
    if (pointAt(k).time == t) --k;
    return segmentAt(k).valueAt(t);
}

Rational Sequence::rightLimitAt(const Rational& t) const {
    checkDomain(t);
    return segmentAt(breakpointIndex(t)).valueAt(t);
}

Sequence Sequence::cut(const Rational& from, const Rational& until) const {
    if (!(from < until))
        throw std::invalid_argument("cut requires from < until");
    if (from < definedFrom() || until > definedUntil())
        throw std::out_of_range("cut [" + from.toString() + ", " + until.toString() + "[ exceeds sequence domain");
    std::vector<Element> out;
    for (std::size_t i = 2 * breakpointIndex(from); i < elements_.size(); ++i) {
        if (startOf(elements_[i]) >= until) break;
        appendClipped(out, elements_[i], from, until);
    }
    return fromTrusted(std::move(out));
}

Sequence Sequence::shifted(const Rational& dt, const Rational& dv) const {
    std::vector<Element> out;
    out.reserve(elements_.size());
    for (const auto& e : elements_) out.push_back(uppnc::shifted(e, dt, dv));
    return fromTrusted(std::move(out));
}

Sequence Sequence::negated() const {
    std::vector<Element> out;
    out.reserve(elements_.size());
    for (const auto& e : elements_) out.push_back(uppnc::negated(e));
    return fromTrusted(std::move(out));
}

Sequence Sequence::canonical() const {
    std::vector<Element> out;
    out.reserve(elements_.size());
    for (const auto& e : elements_) appendCompact(out, e);
    return fromTrusted(std::move(out));
}

Sequence Sequence::concatenate(std::span<const Sequence> parts) {
    std::vector<Element> out;
    for (const auto& part : parts) {
        if (!out.empty() && endOf(out.back()) != part.definedFrom())
            throw InvalidRepresentation("concatenated sequences are not adjacent");
        for (const auto& e : part.elements()) appendCompact(out, e);
    }
    return fromTrusted(std::move(out));
}

void appendCompact(std::vector<Element>& out, Element e) {
    if (const auto* r = std::get_if<Segment>(&e); r && out.size() >= 2) {
        const auto* p = std::get_if<Point>(&out[out.size() - 1]);
        auto* l = std::get_if<Segment>(&out[out.size() - 2]);
        if (p && l && l->endTime == p->time && p->time == r->startTime && l->slope == r->slope &&
            p->value == r->rightLimitAtStart && l->leftLimitAtEnd() == p->value) {
            l->endTime = r->endTime;
            out.pop_back();
            return;
        }
    }
    out.push_back(std::move(e));
}

std::vector<Element> mergeLowerEnvelope(const std::vector<Element>& a, const std::vector<Element>& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    std::vector<Element> out;
    out.reserve(a.size() + b.size());
    sweep(a, b,
          [&](const Rational& t, const Rational* va, const Rational* vb) {
              if (va && vb) appendCompact(out, Point(t, *vb < *va ? *vb : *va));
              else if (va) appendCompact(out, Point(t, *va));
              else if (vb) appendCompact(out, Point(t, *vb));
          },
          [&](const Rational& u, const Rational& v, const Segment* A, const Segment* B) {
              if (A && B) appendLowerOf(out, u, v, *A, *B);
              else if (A || B) {
                  const Segment& s = A ? *A : *B;
                  appendCompact(out, Segment(u, v, s.valueAt(u), s.slope));
              }
          });
    return out;
}

Sequence fillGaps(const std::vector<Element>& partial, const Rational& from, const Rational& until,
                  const Rational& fillValue) {
    if (fillValue.isPlusInfinity())
        return Sequence::fromTrusted(mergeLowerEnvelope(partial, Sequence::constant(from, until, fillValue).elements()));
    if (fillValue.isMinusInfinity()) {
        std::vector<Element> neg;
        neg.reserve(partial.size());
        for (const auto& e : partial) neg.push_back(negated(e));
        return fillGaps(neg, from, until, Rational::plusInfinity()).negated();
    }
    throw std::invalid_argument("fillGaps supports only infinite fill values");
}

Sequence combine(const Sequence& a, const Sequence& b, PointwiseOp op) {
    if (a.definedFrom() != b.definedFrom() || a.definedUntil() != b.definedUntil())
        throw std::invalid_argument("pointwise combination requires sequences on the same domain");
    if (op == PointwiseOp::Minimum)
        return Sequence::fromTrusted(mergeLowerEnvelope(a.elements(), b.elements()));
    if (op == PointwiseOp::Maximum)
        return Sequence::fromTrusted(mergeLowerEnvelope(a.negated().elements(), b.negated().elements())).negated();

    auto apply = [op](const Rational& x, const Rational& y) { return op == PointwiseOp::Add ? x + y : x - y; };
    std::vector<Element> out;
    out.reserve(a.size() + b.size());
    sweep(a.elements(), b.elements(),
          [&](const Rational& t, const Rational* va, const Rational* vb) { appendCompact(out, Point(t, apply(*va, *vb))); },
          [&](const Rational& u, const Rational& v, const Segment* A, const Segment* B) {
              Rational rl = apply(A->valueAt(u), B->valueAt(u));
              Rational slope = rl.isInfinite() ? Rational(0) : apply(A->slope, B->slope);
              appendCompact(out, Segment(u, v, std::move(rl), std::move(slope)));
          });
    return Sequence::fromTrusted(std::move(out));
}

std::optional<Disagreement> lastDisagreement(const Sequence& a, const Sequence& b) {
    if (a.definedFrom() != b.definedFrom() || a.definedUntil() != b.definedUntil())
        throw std::invalid_argument("comparison requires sequences on the same domain");
    std::optional<Disagreement> last;
    sweep(a.elements(), b.elements(),
          [&](const Rational& t, const Rational* va, const Rational* vb) {
              if (!va || !vb || *va != *vb) last = Disagreement{t, true, t};
          },
          [&](const Rational& u, const Rational& v, const Segment* A, const Segment* B) {
              if (A->valueAt(u) != B->valueAt(u) || A->valueAt(v) != B->valueAt(v))
                  last = Disagreement{u, false, v};
          });
    return last;
}

std::ostream& operator<<(std::ostream& os, const Sequence& s) {
    os << "[";
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? ", " : "") << s.elements()[i];
    return os << "]";
}

}  // namespace uppnc
