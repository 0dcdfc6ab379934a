#pragma once

// Full runs of the (2,2) classical-secret and (5,5) quantum-secret sharing
// schemes over simulated quantum and classical channels.
//
// (2,2) phases:
//   auth-tokens     S shares two public Bell pairs with each receiver. Each
//                   receiver Bell-measures its two halves (r1r1', r2r2'); S
//                   Bell-measures the two halves it kept and infers theirs.
//   splitting       S prepares Bell(r1r1') and Bell(r2r2'), keeps r1, sends
//                   r1', r2' to R1 and r2 to R2. R1 swaps (R1R1'), S teleports
//                   the secret over the swapped pair (ss'), R2 measures (xi').
//   authentication  R1 sends (r1^R1)(r1'^R1'), R2 sends xi'^r2^r2'; S checks
//                   xi' against its own prediction.
//   combining       On accept S publishes ss'; R1 and R2 pool their shares.
//
// The (5,5) scheme reuses the splitting circuit on a qubit secret, with S
// drawing the pair labels itself and handing every classical piece to a
// separate agent over private channels.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qss/labels.hpp"
#include "qss/outcomes.hpp"
#include "qss/statevec.hpp"
#include "qss/transcript.hpp"

namespace qss {

class IncompleteShares : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class AttackKind { none, intercept_resend_computational, intercept_resend_bell, token_flip, r1_lie };

/// Which in-flight transmission an intercept-resend attack hits.
enum class AttackTarget {
    token_r1,  // public-pair halves going to R1 (computational: the first one)
    token_r2,  // public-pair halves going to R2
    split_r1,  // r1' (computational) or r1' and r2' (Bell) going to R1
    split_r2,  // r2 going to R2 (computational only)
};

/// Classical messages may be read but never blocked or altered in transit;
/// token-flip and r1-lie model dishonest receivers.
struct AttackModel {
    AttackKind kind = AttackKind::none;
    AttackTarget target = AttackTarget::split_r2;
    BsmOutcome delta{};  // r1-lie: XOR applied to R1's token

    /// "none", "token-flip", "r1-lie:01", "intercept-resend-computational",
    /// "intercept-resend-computational@token-r2", "intercept-resend-bell@split-r1", ...
    /// Throws std::invalid_argument for anything else.
    static AttackModel parse(std::string_view spec);
    [[nodiscard]] std::string to_string() const;
    friend bool operator==(const AttackModel&, const AttackModel&) = default;
};

struct Qss22Config {
    // Public pairs announced for the token phase.
    BellLabel r1_pair_a = kPhiPlus;
    BellLabel r1_pair_b = kPhiMinus;
    BellLabel r2_pair_a = kPsiPlus;
    BellLabel r2_pair_b = kPsiMinus;
    // S's teleportation BSM before R1's swapping BSM. The two act on disjoint
    // qubits, so either order must give the same statistics.
    bool teleport_before_swap = false;
};

struct TokenPhaseResult {
    BellLabel r1_receiver;  // what R1 measured
    BellLabel r1_sender;    // what S inferred
    BellLabel r2_receiver;
    BellLabel r2_sender;
};

TokenPhaseResult run_auth_tokens(const Qss22Config& config, OutcomeSource& source, EventLog& log,
                                 const AttackModel& attack = {});

struct SplitResult22 {
    BsmOutcome bsm_r1;  // R1R1'
    BsmOutcome bsm_s;   // ss'
    bool xi_prime = false;
};

/// Runs the five-qubit splitting circuit with S's records r1, r2.
SplitResult22 run_splitting_22(bool secret, BellLabel r1, BellLabel r2, OutcomeSource& source, EventLog& log,
                               const AttackModel& attack = {}, bool teleport_before_swap = false);

[[nodiscard]] constexpr BsmOutcome make_token_r1(BellLabel r1, BsmOutcome bsm_r1) { return as_outcome(r1) ^ bsm_r1; }
[[nodiscard]] constexpr bool make_token_r2(bool xi_prime, BellLabel r2) { return xi_prime != (r2.z != r2.x); }

struct SenderRecords {
    bool secret = false;
    BellLabel r1;
    BellLabel r2;
    BsmOutcome bsm_s;
};

struct AuthDecision {
    bool accepted = false;
    BsmOutcome recovered_bsm_r1;
    bool recovered_xi_prime = false;
    bool predicted_xi_prime = false;
};

/// Unmasks both tokens and accepts iff xi' equals S's prediction
/// secret ^ x_exp(end_to_end_correction(r1, r2, R1R1', ss')).
[[nodiscard]] AuthDecision verify_authentication(const SenderRecords& records, BsmOutcome token_r1, bool token_r2);

struct ShareSet22 {
    struct R1Share {
        std::optional<BellLabel> r1;
        std::optional<BsmOutcome> bsm_r1;
    } r1_share;
    struct R2Share {
        std::optional<bool> xi_prime;
        std::optional<BellLabel> r2;
    } r2_share;
    std::optional<BsmOutcome> public_ss;
};

/// Throws IncompleteShares if any field is missing.
[[nodiscard]] bool reconstruct22(const ShareSet22& shares);

/// Everything a (2,2) run produced, including values no single party sees.
struct Run22 {
    Transcript transcript;
    bool secret = false;
    AttackModel attack;
    TokenPhaseResult tokens;
    SplitResult22 split;
    BsmOutcome token_r1;  // as sent by R1
    bool token_r2 = false;
    AuthDecision auth;
    ShareSet22 shares;
    std::optional<bool> reconstructed;

    [[nodiscard]] bool accepted() const { return auth.accepted; }
};

Run22 simulate_qss22(bool secret, OutcomeSource& source, const AttackModel& attack = {},
                     const Qss22Config& config = {});

/// Sampled run; trial i draws from the counter stream (seed, i).
Run22 run_qss22(bool secret, std::uint64_t seed, const AttackModel& attack = {}, std::uint64_t trial = 0,
                const Qss22Config& config = {});

struct ShareSet55 {
    std::optional<BsmOutcome> bsm_r1;  // R1
    std::optional<StateVector> qubit;  // R2: the encrypted qubit
    std::optional<BellLabel> s1;       // R3
    std::optional<BellLabel> s2;       // R4
    std::optional<BsmOutcome> bsm_s;   // R5
};

struct Run55 {
    Transcript transcript;
    ShareSet55 shares;
};

Run55 simulate_qss55(const StateVector& secret, OutcomeSource& source, bool teleport_before_swap = false);

/// Throws std::invalid_argument unless |r|^2 + |s|^2 = 1 within 1e-12.
Run55 run_qss55(Amplitude r, Amplitude s, std::uint64_t seed, std::uint64_t trial = 0);

/// Undoes end_to_end_correction(s1, s2, R1R1', ss') on the qubit piece.
/// Throws IncompleteShares if any piece is missing.
[[nodiscard]] StateVector reconstruct55(const ShareSet55& shares);

[[nodiscard]] std::string format_amplitude(Amplitude a);
[[nodiscard]] std::string format_qubit(const StateVector& q);

}  // namespace qss
