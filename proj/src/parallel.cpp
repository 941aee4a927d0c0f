#include "uppnc/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

namespace uppnc {

unsigned ComputationSettings::effectiveWorkers() const {
    if (workerCount) return std::max(1u, *workerCount);
    if (const char* env = std::getenv("UPPNC_WORKERS")) {
        char* end = nullptr;
        long n = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && n > 0) return static_cast<unsigned>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

bool ComputationSettings::shouldParallelize(std::size_t workSize) const {
    return useParallelism && workSize >= parallelismThreshold && effectiveWorkers() > 1;
}

ComputationSettings ComputationSettings::sequential() {
    ComputationSettings s;
    s.useParallelism = false;
    return s;
}

void parallelFor(std::size_t count, std::size_t workSize, const ComputationSettings& settings,
                 const std::function<void(std::size_t)>& body) {
    if (count == 0) return;
    unsigned workers = settings.shouldParallelize(workSize)
                           ? static_cast<unsigned>(std::min<std::size_t>(settings.effectiveWorkers(), count))
                           : 1u;
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex errorMutex;
    auto work = [&] {
        for (;;) {
            if (failed.load(std::memory_order_relaxed)) return;
            std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(errorMutex);
                if (!error) error = std::current_exception();
                failed = true;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

void EnvelopeAccumulator::add(std::vector<Element> run) {
    if (run.empty()) return;
    Run incoming{1, std::move(run)};
    while (!stack_.empty() && stack_.back().weight <= incoming.weight) {
        incoming.elements = mergeLowerEnvelope(stack_.back().elements, incoming.elements);
        incoming.weight += stack_.back().weight;
        stack_.pop_back();
    }
    stack_.push_back(std::move(incoming));
}

std::vector<Element> EnvelopeAccumulator::take() {
    std::vector<Element> out;
    while (!stack_.empty()) {
        out = out.empty() ? std::move(stack_.back().elements) : mergeLowerEnvelope(stack_.back().elements, out);
        stack_.pop_back();
    }
    return out;
}

namespace {

/// Splits [from, until[ into at most `parts` buckets at quantiles of the element endpoints.
std::vector<Rational> bucketBounds(std::span<const Element> elements, const Rational& from, const Rational& until,
                                   std::size_t parts) {
    std::vector<Rational> ends;
    ends.reserve(elements.size());
    for (const auto& e : elements) {
        const Rational& s = startOf(e);
        if (from < s && s < until) ends.push_back(s);
    }
    std::sort(ends.begin(), ends.end());
    ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
    std::vector<Rational> bounds{from};
    for (std::size_t k = 1; k < parts && !ends.empty(); ++k) {
        const Rational& q = ends[k * ends.size() / parts];
        if (bounds.back() < q) bounds.push_back(q);
    }
    bounds.push_back(until);
    return bounds;
}

}  // namespace

Sequence lowerEnvelope(std::span<const Element> elements, const Rational& from, const Rational& until,
                       const ComputationSettings& settings) {
    if (!(from < until)) throw std::invalid_argument("envelope domain is empty");
    if (elements.empty()) throw std::invalid_argument("envelope of no elements");

    std::size_t parts = settings.shouldParallelize(elements.size()) ? settings.effectiveWorkers() * 4 : 1;
    std::vector<Rational> bounds = bucketBounds(elements, from, until, parts);
    std::size_t buckets = bounds.size() - 1;
    std::vector<std::vector<Element>> pieces(buckets);

    parallelFor(buckets, elements.size(), settings, [&](std::size_t b) {
        EnvelopeAccumulator acc;
        std::vector<Element> clipped;
        for (const auto& e : elements) {
            clipped.clear();
            appendClipped(clipped, e, bounds[b], bounds[b + 1]);
            if (!clipped.empty()) acc.add(std::move(clipped));
        }
        pieces[b] = acc.take();
    });

    std::vector<Element> joined;
    for (auto& piece : pieces)
        for (auto& e : piece) appendCompact(joined, std::move(e));
    return fillGaps(joined, from, until, Rational::plusInfinity()).canonical();
}

Sequence upperEnvelope(std::span<const Element> elements, const Rational& from, const Rational& until,
                       const ComputationSettings& settings) {
    std::vector<Element> negatedElements;
    negatedElements.reserve(elements.size());
    for (const auto& e : elements) negatedElements.push_back(negated(e));
    return lowerEnvelope(negatedElements, from, until, settings).negated();
}

Curve parallelAggregate(std::vector<Curve> items, const CurveOperation& op, const ComputationSettings& settings) {
    if (items.empty()) throw std::invalid_argument("aggregate of no curves");
    while (items.size() > 1) {
        std::size_t pairs = items.size() / 2;
        std::vector<std::optional<Curve>> next(pairs);
        std::size_t work = 0;
        for (const auto& c : items) work += c.baseSequence().size();
        parallelFor(pairs, work, settings, [&](std::size_t i) { next[i] = op(items[2 * i], items[2 * i + 1]); });
        std::vector<Curve> level;
        level.reserve(pairs + 1);
        for (auto& c : next) level.push_back(std::move(*c));
        if (items.size() % 2 == 1) level.push_back(std::move(items.back()));
        items = std::move(level);
    }
    return std::move(items.front());
}

}  // namespace uppnc
