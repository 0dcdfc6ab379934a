#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qss {

/// One of the four Bell states as a (phase bit, parity bit) pair.
///
/// Phi+ = 00, Psi+ = 01, Phi- = 10, Psi- = 11. The state itself is
/// (I (x) X^x Z^z)|Phi+>, so the label doubles as the Pauli frame of the pair.
struct BellLabel {
    bool z = false;  // phase bit
    bool x = false;  // parity bit

    [[nodiscard]] constexpr unsigned index() const { return (unsigned(z) << 1) | unsigned(x); }
    [[nodiscard]] static constexpr BellLabel from_index(unsigned i) {
        if (i > 3) throw std::out_of_range("BellLabel index must be 0..3");
        return BellLabel{(i & 2U) != 0, (i & 1U) != 0};
    }
    friend constexpr bool operator==(BellLabel, BellLabel) = default;
};

inline constexpr BellLabel kPhiPlus{false, false};
inline constexpr BellLabel kPsiPlus{false, true};
inline constexpr BellLabel kPhiMinus{true, false};
inline constexpr BellLabel kPsiMinus{true, true};
inline constexpr std::array<BellLabel, 4> kAllBellLabels{kPhiPlus, kPsiPlus, kPhiMinus, kPsiMinus};

/// Result of a Bell-state measurement: b1 is read off the control qubit after
/// the basis rotation (phase bit), b2 off the target (parity bit).
struct BsmOutcome {
    bool b1 = false;
    bool b2 = false;

    [[nodiscard]] constexpr unsigned index() const { return (unsigned(b1) << 1) | unsigned(b2); }
    [[nodiscard]] static constexpr BsmOutcome from_index(unsigned i) {
        if (i > 3) throw std::out_of_range("BsmOutcome index must be 0..3");
        return BsmOutcome{(i & 2U) != 0, (i & 1U) != 0};
    }
    friend constexpr bool operator==(BsmOutcome, BsmOutcome) = default;
    friend constexpr BsmOutcome operator^(BsmOutcome a, BsmOutcome b) {
        return BsmOutcome{a.b1 != b.b1, a.b2 != b.b2};
    }
};

/// The operator Z^z_exp X^x_exp. Composition is bitwise XOR (global phase dropped).
struct PauliCorrection {
    bool z_exp = false;
    bool x_exp = false;

    [[nodiscard]] constexpr unsigned index() const { return (unsigned(z_exp) << 1) | unsigned(x_exp); }
    [[nodiscard]] static constexpr PauliCorrection from_index(unsigned i) {
        if (i > 3) throw std::out_of_range("PauliCorrection index must be 0..3");
        return PauliCorrection{(i & 2U) != 0, (i & 1U) != 0};
    }
    friend constexpr bool operator==(PauliCorrection, PauliCorrection) = default;
    friend constexpr PauliCorrection operator^(PauliCorrection a, PauliCorrection b) {
        return PauliCorrection{a.z_exp != b.z_exp, a.x_exp != b.x_exp};
    }
};

inline constexpr PauliCorrection kIdentity{false, false};
inline constexpr PauliCorrection kPauliX{false, true};
inline constexpr PauliCorrection kPauliZ{true, false};
inline constexpr PauliCorrection kPauliZX{true, true};

// A BSM outcome names the Bell state the measured pair collapsed to.
[[nodiscard]] constexpr BellLabel as_label(BsmOutcome o) { return BellLabel{o.b1, o.b2}; }
[[nodiscard]] constexpr BsmOutcome as_outcome(BellLabel l) { return BsmOutcome{l.z, l.x}; }

[[nodiscard]] std::string_view name(BellLabel label);      // "Phi+", "Psi-", ...
[[nodiscard]] std::string_view name(PauliCorrection corr);  // "I", "X", "Z", "ZX"
[[nodiscard]] std::string bits(BellLabel label);            // "01"
[[nodiscard]] std::string bits(BsmOutcome outcome);
[[nodiscard]] std::string bits(PauliCorrection corr);

/// Parses "00".."11" (MSB first) or a Bell name ("Phi+", "psi-").
[[nodiscard]] BellLabel parse_bell_label(std::string_view text);
[[nodiscard]] BsmOutcome parse_bsm_outcome(std::string_view text);

}  // namespace qss
