#pragma once

#include <functional>
#include <string_view>

#include "uppnc/sequence.hpp"

namespace uppnc {

/// Classification driving the fast-path dispatch. Only operations that provably
/// keep a curve inside its family preserve the tag; everything else yields Generic.
enum class CurveFamily { Generic, RateLatency, SigmaRho, Delay, Stair, Constant, FlowControl };

std::string_view toString(CurveFamily family);

/// Ultimately pseudo-periodic piecewise affine function on [0, +inf[.
///
/// Stored as the quadruple {baseSequence on [0, T + d[, T, d, c}; for t >= T,
/// f(t + k d) = f(t) + k c. Infinite values inside the period repeat unchanged,
/// and a period that is entirely infinite of one sign has c = 0.
class Curve {
public:
    Curve(Sequence baseSequence, Rational pseudoPeriodStart, Rational pseudoPeriodLength, Rational pseudoPeriodHeight,
          CurveFamily family = CurveFamily::Generic);

    const Sequence& baseSequence() const { return base_; }
    const Rational& pseudoPeriodStart() const { return T_; }
    const Rational& pseudoPeriodLength() const { return d_; }
    const Rational& pseudoPeriodHeight() const { return c_; }
    CurveFamily family() const { return family_; }
    Curve withFamily(CurveFamily family) const;

    Rational valueAt(const Rational& t) const;
    Rational leftLimitAt(const Rational& t) const;
    Rational rightLimitAt(const Rational& t) const;

    /// Unrolled representation on [0, horizon[.
    Sequence extend(const Rational& horizon) const;
    /// Restriction to [from, until[.
    Sequence cut(const Rational& from, const Rational& until) const;
    /// The base sequence restricted to one pseudo-period, [T, T + d[.
    Sequence periodSequence() const;

    /// g(t) = 0 on [0, theta[, f(t - theta) afterwards.
    Curve delayBy(const Rational& theta) const;
    /// g(t) = f(t + theta).
    Curve anticipateBy(const Rational& theta) const;
    /// g(t) = f(t) + v.
    Curve verticalShift(const Rational& v) const;
    /// g(t) = -f(t).
    Curve negated() const;

    /// Equivalent curve with minimal period length, then minimal period start,
    /// then the fewest elements. Affine (or infinite) tails use d = 1.
    Curve minimized() const;

    bool isUltimatelyPlusInfinite() const;
    bool isUltimatelyMinusInfinite() const;
    bool isUltimatelyInfinite() const { return isUltimatelyPlusInfinite() || isUltimatelyMinusInfinite(); }
    /// The period mixes finite values with infinite ones.
    bool hasInfiniteGaps() const { return tail_ == Tail::Gapped; }
    /// Finite everywhere on [0, +inf[.
    bool isFinite() const;

    /// c / d, or +-inf for ultimately infinite curves.
    Rational asymptoticRate() const;

    /// Structural identity of the representation (not pointwise equivalence).
    friend bool operator==(const Curve& a, const Curve& b) {
        return a.T_ == b.T_ && a.d_ == b.d_ && a.c_ == b.c_ && a.base_ == b.base_;
    }

private:
    /// Visits every element of the unrolled curve that intersects [from, until[, clipped.
    void forEachElement(const Rational& from, const Rational& until, const std::function<void(const Element&)>& fn) const;

    Sequence base_;
    Sequence period_;
    Rational T_;
    Rational d_;
    Rational c_;
    CurveFamily family_ = CurveFamily::Generic;
    enum class Tail { Finite, Gapped, PlusInfinite, MinusInfinite };
    Tail tail_ = Tail::Finite;
};

/// Raised when an operation's precondition on its operands does not hold
/// (for example a pseudo-inverse of a decreasing curve).
class PreconditionError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// True iff f(t) = g(t) for every t >= 0.
bool equivalent(const Curve& f, const Curve& g);

/// Common simple curves, used as building blocks and identities.
Curve zeroCurve();
Curve constantCurve(const Rational& value);
/// +inf everywhere except 0 at t = 0: the identity of min-plus convolution.
Curve zeroDelayCurve();
/// 0 at t = 0, -inf elsewhere: the identity of max-plus convolution.
Curve maxPlusIdentity();
/// f(t) = slope * t.
Curve linearCurve(const Rational& slope);
/// +inf everywhere.
Curve plusInfiniteCurve();

std::ostream& operator<<(std::ostream& os, const Curve& c);

}  // namespace uppnc
