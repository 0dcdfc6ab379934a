#pragma once

// Sources of measurement outcomes and classical coin flips. A protocol run
// asks its source to pick an index given the Born (or prior) probabilities;
// the same run code then serves sampling, scripted postselection and
// exhaustive branch enumeration.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "qss/rational.hpp"
#include "qss/rng.hpp"

namespace qss {

class OutcomeSource {
public:
    virtual ~OutcomeSource() = default;
    /// Index of the chosen outcome. Entries below 1e-15 are never chosen.
    virtual std::size_t pick(std::span<const double> probabilities) = 0;
};

class SampledOutcomes final : public OutcomeSource {
public:
    explicit SampledOutcomes(CounterRng rng) : rng_(rng) {}
    std::size_t pick(std::span<const double> probabilities) override;

private:
    CounterRng rng_;
};

/// Replays a fixed list of choices. Throws std::domain_error when a scripted
/// choice has zero probability and std::out_of_range when the script runs out.
class ScriptedOutcomes final : public OutcomeSource {
public:
    explicit ScriptedOutcomes(std::vector<std::size_t> script) : script_(std::move(script)) {}
    std::size_t pick(std::span<const double> probabilities) override;
    [[nodiscard]] bool exhausted() const { return next_ == script_.size(); }

private:
    std::vector<std::size_t> script_;
    std::size_t next_ = 0;
};

/// Depth-first walk over every branch of a run with nonzero probability.
/// Branch weights are exact: every probability met along the way must be
/// dyadic (k / 2^m), which holds for all Bell-pair circuits used here.
class BranchCursor final : public OutcomeSource {
public:
    std::size_t pick(std::span<const double> probabilities) override;

    void begin();
    /// Moves to the next unexplored branch; false once the tree is exhausted.
    bool advance();
    [[nodiscard]] Rational weight() const { return weight_; }

private:
    struct Level {
        std::vector<std::size_t> options;
        std::size_t choice = 0;
    };
    std::vector<Level> path_;
    std::size_t depth_ = 0;
    Rational weight_{1};
};

/// Calls visit(run(source), weight) once per branch. Weights sum to 1.
template <class Run, class Visit>
void for_each_branch(Run&& run, Visit&& visit) {
    BranchCursor cursor;
    do {
        cursor.begin();
        auto result = run(static_cast<OutcomeSource&>(cursor));
        visit(std::move(result), cursor.weight());
    } while (cursor.advance());
}

}  // namespace qss
