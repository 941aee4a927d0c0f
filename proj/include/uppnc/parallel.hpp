#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>

#include "uppnc/curve.hpp"

namespace uppnc {

/// Runtime knobs for internal parallelism. Results never depend on them.
struct ComputationSettings {
    bool useParallelism = true;
    /// Work below this many elements stays on the calling thread.
    std::size_t parallelismThreshold = 256;
    /// Defaults to the UPPNC_WORKERS environment variable, then hardware concurrency.
    std::optional<unsigned> workerCount;
    /// Enables family-specific shortcuts and early minimization in dispatching operations.
    bool useFastPaths = true;

    unsigned effectiveWorkers() const;
    bool shouldParallelize(std::size_t workSize) const;

    static ComputationSettings sequential();
};

/// Runs body(i) for i in [0, count). Runs on several threads when the settings
/// allow it and workSize reaches the threshold. The first exception thrown by
/// any task is rethrown after all workers stop.
void parallelFor(std::size_t count, std::size_t workSize, const ComputationSettings& settings,
                 const std::function<void(std::size_t)>& body);

/// Incremental lower envelope of sorted partial element lists ("runs").
/// Runs are merged pairwise as in a binary counter, so the work stays
/// O(n log n) and only O(log n) runs are alive at once.
class EnvelopeAccumulator {
public:
    void add(std::vector<Element> run);
    void add(const Element& e) { add(std::vector<Element>{e}); }
    bool empty() const { return stack_.empty(); }
    /// The envelope of everything added so far; leaves the accumulator empty.
    std::vector<Element> take();

private:
    struct Run {
        std::size_t weight;
        std::vector<Element> elements;
    };
    std::vector<Run> stack_;
};

/// Pointwise infimum of the elements over [from, until[. Instants not covered
/// by any element are +inf.
Sequence lowerEnvelope(std::span<const Element> elements, const Rational& from, const Rational& until,
                       const ComputationSettings& settings = {});
/// Pointwise supremum; uncovered instants are -inf.
Sequence upperEnvelope(std::span<const Element> elements, const Rational& from, const Rational& until,
                       const ComputationSettings& settings = {});

using CurveOperation = std::function<Curve(const Curve&, const Curve&)>;

/// Balanced-tree fold of an associative operation.
Curve parallelAggregate(std::vector<Curve> items, const CurveOperation& op, const ComputationSettings& settings = {});

}  // namespace uppnc
