#pragma once

#include <span>
#include <vector>

#include "uppnc/element.hpp"

namespace uppnc {

/// Piecewise affine function on a bounded domain [definedFrom, definedUntil[.
///
/// Elements strictly alternate: a Point at every breakpoint, an open Segment
/// between consecutive breakpoints. The first element is the Point at
/// definedFrom and the last is the Segment ending at definedUntil.
class Sequence {
public:
    Sequence() = default;
    /// Validates alternation and contiguity.
    explicit Sequence(std::vector<Element> elements);

    /// Skips validation; for internal producers that build well-formed element lists.
    static Sequence fromTrusted(std::vector<Element> elements);

    /// Constant function on [from, until[.
    static Sequence constant(const Rational& from, const Rational& until, const Rational& value);

    const std::vector<Element>& elements() const& { return elements_; }
    /// Moves the elements out of a temporary, so range-for over a cut stays valid.
    std::vector<Element> elements() && { return std::move(elements_); }
    std::size_t size() const { return elements_.size(); }
    bool empty() const { return elements_.empty(); }
    const Rational& definedFrom() const { return startOf(elements_.front()); }
    const Rational& definedUntil() const { return endOf(elements_.back()); }

    /// Number of breakpoints (points) in the sequence.
    std::size_t pointCount() const { return elements_.size() / 2; }
    const Point& pointAt(std::size_t k) const { return std::get<Point>(elements_[2 * k]); }
    const Segment& segmentAt(std::size_t k) const { return std::get<Segment>(elements_[2 * k + 1]); }

    Rational valueAt(const Rational& t) const;
    Rational leftLimitAt(const Rational& t) const;
    Rational rightLimitAt(const Rational& t) const;

    /// Restriction to [from, until[, which must lie inside the domain.
    Sequence cut(const Rational& from, const Rational& until) const;
    Sequence shifted(const Rational& dt, const Rational& dv) const;
    Sequence negated() const;
    /// Fewest-element pointwise-equal form: merges colinear neighbours and removable points.
    Sequence canonical() const;

    /// Concatenation of sequences covering adjacent domains.
    static Sequence concatenate(std::span<const Sequence> parts);

    friend bool operator==(const Sequence&, const Sequence&) = default;

private:
    /// Index k of the breakpoint with pointAt(k).time <= t < next breakpoint.
    std::size_t breakpointIndex(const Rational& t) const;
    void checkDomain(const Rational& t) const;

    std::vector<Element> elements_;
};

/// Appends an element to a list, merging it into the previous one when the two
/// join seamlessly (same affine function across a removable point).
void appendCompact(std::vector<Element>& out, Element e);

/// Turns a list with possible gaps into a full Sequence on [from, until[,
/// filling gaps with the given value (typically +inf for lower envelopes).
Sequence fillGaps(const std::vector<Element>& partial, const Rational& from, const Rational& until,
                  const Rational& fillValue);

/// Pointwise minimum of two partial element lists; an instant covered by only
/// one list takes that list's value. Output is compacted.
std::vector<Element> mergeLowerEnvelope(const std::vector<Element>& a, const std::vector<Element>& b);

/// Pointwise combination of two sequences on the same domain.
enum class PointwiseOp { Add, Subtract, Minimum, Maximum };
Sequence combine(const Sequence& a, const Sequence& b, PointwiseOp op);

/// Last place where two sequences on the same domain differ: either the instant
/// `time` (isPoint) or the open interval ]time, intervalEnd[.
struct Disagreement {
    Rational time;
    bool isPoint = true;
    Rational intervalEnd;
};
std::optional<Disagreement> lastDisagreement(const Sequence& a, const Sequence& b);

std::ostream& operator<<(std::ostream& os, const Sequence& s);

}  // namespace uppnc
