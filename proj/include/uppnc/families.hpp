#pragma once

#include <optional>
#include <span>

#include "uppnc/parallel.hpp"

namespace uppnc {

/// R (t - L)^+. Requires R > 0, L >= 0.
Curve rateLatency(const Rational& rate, const Rational& latency);
/// 0 at t = 0, sigma + rho t afterwards. Requires sigma, rho >= 0.
Curve sigmaRho(const Rational& sigma, const Rational& rho);
/// 0 on [0, theta], +inf afterwards.
Curve delayCurve(const Rational& theta);
/// 0 at t = 0, height * ceil(t / width) afterwards: each riser is left-continuous.
Curve stairCurve(const Rational& height, const Rational& width);
/// Sub-additive closure of rateLatency(R, L) + W with the origin pinned at 0,
/// built in closed form. Requires R, L, W > 0.
Curve flowControl(const Rational& rate, const Rational& latency, const Rational& window);

/// Builds a family member from its parameters in declaration order:
/// rateLatency(rate, latency), sigmaRho(sigma, rho), delay(delay),
/// stair(height, width), constant(value), flowControl(rate, latency, window).
Curve construct(CurveFamily family, std::span<const Rational> params);

/// Returns f when f(0) = g(0) = 0, f is known to be sub-additive and f <= g
/// pointwise (then f conv g = f); symmetric in g. Empty otherwise.
std::optional<Curve> checkTheoremOneApplicability(const Curve& f, const Curve& g);

/// Convolution that first tries cheaper exact algorithms for known shapes and
/// falls back to the generic one. Equal to convolution(f, g) pointwise.
Curve dispatchConvolution(const Curve& f, const Curve& g, const ComputationSettings& settings = {});

/// True when f(t) <= g(t) for every t >= 0.
bool isBelow(const Curve& f, const Curve& g);

}  // namespace uppnc
