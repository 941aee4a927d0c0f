#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "uppnc/rational.hpp"

namespace uppnc {

/// Raised when a curve or sequence is built from inconsistent pieces.
class InvalidRepresentation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A single time-value pair.
struct Point {
    Rational time;
    Rational value;

    Point() = default;
    Point(Rational time, Rational value);

    friend bool operator==(const Point&, const Point&) = default;
};

/// Affine piece on the open interval ]startTime, endTime[.
/// An infinite piece (rightLimitAtStart = +-inf) always has slope 0.
struct Segment {
    Rational startTime;
    Rational endTime;
    Rational rightLimitAtStart;
    Rational slope;

    Segment() = default;
    Segment(Rational startTime, Rational endTime, Rational rightLimitAtStart, Rational slope);

    bool isInfinite() const { return rightLimitAtStart.isInfinite(); }
    Rational length() const { return endTime - startTime; }
    /// Value at an interior instant; also used for the one-sided limits at the ends.
    Rational valueAt(const Rational& t) const;
    Rational leftLimitAtEnd() const;

    friend bool operator==(const Segment&, const Segment&) = default;
};

using Element = std::variant<Point, Segment>;

inline bool isPoint(const Element& e) { return std::holds_alternative<Point>(e); }
inline bool isSegment(const Element& e) { return std::holds_alternative<Segment>(e); }

const Rational& startOf(const Element& e);
const Rational& endOf(const Element& e);
/// Value of a point, or the right limit at the start of a segment.
const Rational& leadingValue(const Element& e);

/// Element translated by (dt, dv).
Element shifted(const Element& e, const Rational& dt, const Rational& dv);
/// Element with value negated.
Element negated(const Element& e);

/// Restriction of an element to [from, until[; appends the surviving pieces
/// (a segment cut at an interior instant yields a point plus a segment).
void appendClipped(std::vector<Element>& out, const Element& e, const Rational& from, const Rational& until);

/// Min-plus convolution of two elements. Pieces of value +inf are omitted;
/// combining -inf with +inf raises ArithmeticError.
void appendMinPlusConvolution(std::vector<Element>& out, const Element& a, const Element& b);

std::ostream& operator<<(std::ostream& os, const Element& e);

}  // namespace uppnc
