#pragma once

#include "uppnc/parallel.hpp"

namespace uppnc {

/// f_low(y) = inf{t >= 0 : f(t) >= y}, for y >= 0. Requires f nondecreasing.
Curve lowerPseudoInverse(const Curve& f);
/// f_up(y) = sup{t >= 0 : f(t) <= y}, for y >= 0; 0 where the set is empty. Requires f nondecreasing.
Curve upperPseudoInverse(const Curve& f);

/// inf over n >= 0 of the n-fold self-convolution, with the zero-delay curve as 0-th power.
/// Requires f(0) >= 0 and f(0+) >= 0, otherwise the closure is -inf near the origin.
Curve subAdditiveClosure(const Curve& f, const ComputationSettings& settings = {});
/// sup over n >= 0 of the n-fold max-plus self-convolution. Requires f(0) <= 0 and f(0+) <= 0.
Curve superAdditiveClosure(const Curve& f, const ComputationSettings& settings = {});

/// h(t) = f(g(t)). Requires g nondecreasing and nonnegative.
Curve composition(const Curve& f, const Curve& g);

}  // namespace uppnc
