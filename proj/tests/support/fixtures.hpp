#pragma once

// Hand-built curves shared by several test files.

#include "uppnc/curve.hpp"

namespace uppnc::testing {

/// Staircase-like curve: slope 1 up to (2, 2), then flat / slope 1 halves repeating every 2 with rise 1.
inline Curve listingOneCurve() {
    return Curve(Sequence({Point(0, 0), Segment(0, 2, 0, 1), Point(2, 2), Segment(2, 3, 2, 0), Point(3, 2),
                           Segment(3, 4, 2, 1)}),
                 2, 2, 1);
}

inline Rational q(long long n, long long d = 1) { return Rational(n, d); }

}  // namespace uppnc::testing
