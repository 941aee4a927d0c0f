#pragma once

#include "uppnc/parallel.hpp"

namespace uppnc {

struct CurveProperties {
    bool isContinuous = false;
    bool isLeftContinuous = false;
    bool isRightContinuous = false;
    bool isNonDecreasing = false;
    bool isNonNegative = false;
    bool isConcave = false;
    bool isConvex = false;
    bool isSubAdditive = false;
    bool isSuperAdditive = false;
};

CurveProperties classify(const Curve& f, const ComputationSettings& settings = {});

bool isLeftContinuous(const Curve& f);
bool isRightContinuous(const Curve& f);
bool isContinuous(const Curve& f);
bool isNonDecreasing(const Curve& f);
bool isNonNegative(const Curve& f);
/// Convex on [0, +inf[ as an extended function: may end with a +inf stretch.
bool isConvex(const Curve& f);
bool isConcave(const Curve& f);
/// f(0) >= 0 and f(s + t) <= f(s) + f(t) for all s, t >= 0.
bool isSubAdditive(const Curve& f, const ComputationSettings& settings = {});
/// f(0) <= 0 and f(s + t) >= f(s) + f(t) for all s, t >= 0.
bool isSuperAdditive(const Curve& f, const ComputationSettings& settings = {});

}  // namespace uppnc
