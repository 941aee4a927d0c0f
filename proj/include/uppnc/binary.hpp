#pragma once

#include "uppnc/parallel.hpp"

namespace uppnc {

Curve minimum(const Curve& f, const Curve& g, const ComputationSettings& settings = {});
Curve maximum(const Curve& f, const Curve& g, const ComputationSettings& settings = {});
Curve minimumMany(std::vector<Curve> fs, const ComputationSettings& settings = {});
Curve maximumMany(std::vector<Curve> fs, const ComputationSettings& settings = {});

Curve add(const Curve& f, const Curve& g, const ComputationSettings& settings = {});
Curve addMany(std::vector<Curve> fs, const ComputationSettings& settings = {});

enum class SubtractionMode { Plain, NonNegative };
/// [f - g]^+ by default, or the plain difference with SubtractionMode::Plain.
Curve subtract(const Curve& f, const Curve& g, SubtractionMode mode = SubtractionMode::NonNegative,
               const ComputationSettings& settings = {});

/// Min-plus convolution by the generic element-pairwise algorithm.
Curve convolution(const Curve& f, const Curve& g, const ComputationSettings& settings = {});
/// (f deconv g)(t) = sup_{u >= 0} f(t + u) - g(u).
Curve deconvolution(const Curve& f, const Curve& g, const ComputationSettings& settings = {});
Curve maxPlusConvolution(const Curve& f, const Curve& g, const ComputationSettings& settings = {});
/// inf_{u >= 0} f(t + u) - g(u).
Curve maxPlusDeconvolution(const Curve& f, const Curve& g, const ComputationSettings& settings = {});

/// sup_t alpha(t) - beta(t).
Rational verticalDeviation(const Curve& alpha, const Curve& beta);
/// Supremum of a(t) - b(t) over the common domain of two sequences, one-sided
/// limits included; instants where both are the same infinity are ignored.
Rational supremumOfDifference(const Sequence& a, const Sequence& b);

/// sup_t inf{h >= 0 : alpha(t) <= beta(t + h)}; beta must be nondecreasing.
Rational horizontalDeviation(const Curve& alpha, const Curve& beta);

/// Lower envelope of all pairwise element convolutions of two sorted element
/// lists, restricted to [from, until[. Pieces of value +inf are omitted, so the
/// result may have gaps.
std::vector<Element> convolveElements(const std::vector<Element>& a, const std::vector<Element>& b,
                                      const Rational& from, const Rational& until,
                                      const ComputationSettings& settings = {});

/// Range [low, high] of f(t) - rate * t over the elements of a finite sequence,
/// one-sided limits included.
struct DriftRange {
    Rational low;
    Rational high;
};
DriftRange driftRange(const Sequence& s, const Rational& rate);

}  // namespace uppnc
