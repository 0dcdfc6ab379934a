#include "qss/outcomes.hpp"

#include <cmath>
#include <stdexcept>

#include "qss/statevec.hpp"

namespace qss {

Rational Rational::from_dyadic(double p, int max_log2_den) {
    for (int m = 0; m <= max_log2_den; ++m) {
        const double scaled = std::ldexp(p, m);
        const double k = std::round(scaled);
        if (std::abs(scaled - k) <= 1e-12 * std::ldexp(1.0, m)) {
            return Rational(static_cast<std::int64_t>(k), std::int64_t{1} << m);
        }
    }
    throw std::domain_error("probability " + std::to_string(p) + " is not dyadic");
}

std::size_t SampledOutcomes::pick(std::span<const double> probabilities) {
    return sample_index(probabilities, rng_.uniform());
}

std::size_t ScriptedOutcomes::pick(std::span<const double> probabilities) {
    if (next_ >= script_.size()) throw std::out_of_range("outcome script exhausted");
    const std::size_t choice = script_[next_++];
    if (choice >= probabilities.size() || probabilities[choice] < kMinOutcomeProbability) {
        throw std::domain_error("scripted outcome " + std::to_string(choice) + " has zero probability");
    }
    return choice;
}

void BranchCursor::begin() {
    depth_ = 0;
    weight_ = Rational(1);
}

std::size_t BranchCursor::pick(std::span<const double> probabilities) {
    if (depth_ == path_.size()) {
        Level level;
        for (std::size_t i = 0; i < probabilities.size(); ++i) {
            if (probabilities[i] >= kMinOutcomeProbability) level.options.push_back(i);
        }
        if (level.options.empty()) throw std::domain_error("no outcome has nonzero probability");
        path_.push_back(std::move(level));
    }
    const auto& level = path_[depth_++];
    const std::size_t chosen = level.options[level.choice];
    weight_ *= Rational::from_dyadic(probabilities[chosen]);
    return chosen;
}

bool BranchCursor::advance() {
    path_.resize(depth_);
    while (!path_.empty()) {
        auto& last = path_.back();
        if (last.choice + 1 < last.options.size()) {
            ++last.choice;
            return true;
        }
        path_.pop_back();
    }
    return false;
}

}  // namespace qss
