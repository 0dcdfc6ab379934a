#pragma once

#include <deque>
#include <random>
#include <stdexcept>

#include "qss/outcomes.hpp"
#include "qss/statevec.hpp"

namespace qss::test {

/// Takes forced outcomes without consuming the script; consumes one scripted
/// choice at every genuine branch point.
class Steer final : public OutcomeSource {
public:
    explicit Steer(std::deque<std::size_t> script) : script_(std::move(script)) {}

    std::size_t pick(std::span<const double> probabilities) override {
        std::size_t live = 0;
        std::size_t last = 0;
        for (std::size_t i = 0; i < probabilities.size(); ++i) {
            if (probabilities[i] >= kMinOutcomeProbability) {
                ++live;
                last = i;
            }
        }
        if (live == 1) return last;
        if (script_.empty()) throw std::out_of_range("steer script exhausted");
        const auto choice = script_.front();
        script_.pop_front();
        if (probabilities[choice] < kMinOutcomeProbability) throw std::domain_error("steered into a dead branch");
        return choice;
    }

    [[nodiscard]] bool exhausted() const { return script_.empty(); }

private:
    std::deque<std::size_t> script_;
};

inline StateVector random_state(std::size_t qubits, std::mt19937_64& gen) {
    std::normal_distribution<double> normal;
    std::vector<Amplitude> amps(std::size_t{1} << qubits);
    double norm = 0.0;
    for (auto& a : amps) {
        a = {normal(gen), normal(gen)};
        norm += std::norm(a);
    }
    for (auto& a : amps) a /= std::sqrt(norm);
    return StateVector::from_amplitudes(std::move(amps));
}

inline StateVector random_qubit(std::mt19937_64& gen) { return random_state(1, gen); }

}  // namespace qss::test
