#pragma once

// Exact secrecy and authentication analysis.
//
// The (2,2) analyses walk every measurement branch of the protocol with the
// secret drawn uniformly, so all probabilities are exact rationals (the
// honest protocol has 512 equally likely branches). Floating point appears
// only at the reporting boundary.

#include <array>
#include <bitset>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qss/protocol.hpp"
#include "qss/rational.hpp"
#include "qss/statevec.hpp"

namespace qss {

/// Colluding receivers plus an optional tap on the public classical channel.
/// S is never part of a view.
struct AdversaryView {
    bool r1 = false;
    bool r2 = false;
    bool public_tap = false;

    /// "r1-alone", "r2-alone", "public", "all-shares", or any '+'-joined mix
    /// of "r1", "r2", "public" (e.g. "r2+public"). Throws std::invalid_argument.
    static AdversaryView parse(std::string_view spec);
    [[nodiscard]] std::string to_string() const;
};

/// What the view observes in one run, as a canonical string key.
[[nodiscard]] std::string observe(const Run22& run, const AdversaryView& view);

struct WeightedRun22 {
    Rational weight;
    Run22 run;
};

/// Every branch of a (2,2) run with a uniform secret, with exact weights.
[[nodiscard]] std::vector<WeightedRun22> enumerate_qss22(const AttackModel& attack = {},
                                                         const Qss22Config& config = {});

struct SecrecyReport {
    std::string view;
    double mutual_information_bits = 0.0;
    bool exactly_independent = false;  // p(secret, obs) == p(secret) p(obs) for every obs
    bool determines_secret = false;    // every observation pins the secret
    Rational guess_success;            // best achievable P(guess == secret)
    Rational guess_advantage;          // guess_success - 1/2
    std::uint64_t cases_enumerated = 0;
};

[[nodiscard]] SecrecyReport mutual_information_22(const AdversaryView& view);

/// The four classical decryption pieces of the (5,5) scheme.
enum class Piece : unsigned { s1 = 0, s2 = 1, bsm_r1 = 2, bsm_s = 3 };
using PieceSet = std::bitset<4>;

[[nodiscard]] std::string piece_set_name(PieceSet known);

/// Encrypted qubit (R2's piece) averaged uniformly over the pieces not in
/// `known`, which are pinned to `values` (indexed by Piece). Each term comes
/// from a postselected run of the splitting circuit.
[[nodiscard]] DensityMatrix averaged_encrypted_qubit(PieceSet known, const std::array<unsigned, 4>& values,
                                                     const StateVector& secret);

/// Worst case, over every assignment of the known pieces, of the trace
/// distance between the averaged encrypted qubit and I/2.
[[nodiscard]] double encrypted_qubit_mixedness_55(PieceSet known, const StateVector& secret);
[[nodiscard]] double encrypted_qubit_mixedness_55(PieceSet known);

/// Exact probability that S rejects, by branch enumeration with a uniform secret.
[[nodiscard]] Rational exact_detection_rate(const AttackModel& attack);

inline constexpr double kZ99 = 2.5758293035489004;  // two-sided 99% normal quantile

struct AttackSweepReport {
    AttackModel attack;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::uint64_t detected = 0;
    double detection_rate = 0.0;
    double ci_low = 0.0;  // 99% Wilson interval around the empirical rate
    double ci_high = 0.0;
    std::optional<Rational> exact_rate;
    // 99% binomial acceptance band around the exact rate; the empirical rate
    // is consistent with the enumeration when it falls inside.
    double band_low = 0.0;
    double band_high = 0.0;
    bool consistent_with_exact = false;
};

/// Runs `trials` sampled (2,2) runs (trial i on stream (seed, i), secret drawn
/// per trial) and counts rejections. Throws std::invalid_argument for trials == 0.
[[nodiscard]] AttackSweepReport attack_sweep(const AttackModel& attack, std::uint64_t trials, std::uint64_t seed);

struct MessageUniformity {
    std::string message;                 // "token-r1", "token-r2", "ss'"
    std::vector<Rational> distribution;  // exact, by value
    bool exactly_uniform = false;
    bool independent_of_secret = false;  // exact
    std::vector<std::uint64_t> counts;   // sampled
    double chi_square = 0.0;
    double p_value = 1.0;  // goodness of fit to uniform
    double independence_chi_square = 0.0;
    double independence_p_value = 1.0;
};

struct UniformityReport {
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::vector<MessageUniformity> messages;
};

[[nodiscard]] UniformityReport public_transcript_uniformity(std::uint64_t trials, std::uint64_t seed);

/// Upper tail of the chi-square distribution.
[[nodiscard]] double chi_square_p_value(double statistic, unsigned degrees_of_freedom);

struct MixednessEntry {
    PieceSet known;
    double trace_distance = 0.0;
};

// "qss-report/1" serializations: a header line then one object per line.
[[nodiscard]] std::string to_jsonl(const SecrecyReport& r);
[[nodiscard]] std::string to_jsonl(const AttackSweepReport& r);
[[nodiscard]] std::string to_jsonl(const UniformityReport& r);
[[nodiscard]] std::string to_jsonl(const std::vector<MixednessEntry>& r);
[[nodiscard]] std::string to_text(const SecrecyReport& r);
[[nodiscard]] std::string to_text(const AttackSweepReport& r);
[[nodiscard]] std::string to_text(const UniformityReport& r);
[[nodiscard]] std::string to_text(const std::vector<MixednessEntry>& r);

}  // namespace qss
