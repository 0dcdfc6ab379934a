#pragma once

// Exact small-register state-vector simulator.
//
// Qubit ordering is big-endian: qubit 0 is the most significant bit of the
// amplitude index. Registers hold at most six qubits.

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "qss/labels.hpp"
#include "qss/rng.hpp"

namespace qss {

using Amplitude = std::complex<double>;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kMinOutcomeProbability = 1e-15;
inline constexpr double kFidelityThreshold = 1.0 - 1e-12;

struct QubitId {
    std::size_t index = 0;
    friend constexpr bool operator==(QubitId, QubitId) = default;
    friend constexpr auto operator<=>(QubitId, QubitId) = default;
};

class StateVector {
public:
    static constexpr std::size_t kMaxQubits = 6;

    /// |0...0> on n_qubits qubits.
    explicit StateVector(std::size_t n_qubits);

    /// Throws std::invalid_argument unless the length is 2^n (1 <= n <= 6),
    /// every amplitude is finite and the squared norm is 1 within 1e-12.
    static StateVector from_amplitudes(std::vector<Amplitude> amplitudes);
    static StateVector single_qubit(Amplitude zero, Amplitude one);

    [[nodiscard]] std::size_t qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t dimension() const noexcept { return amps_.size(); }
    [[nodiscard]] std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
    [[nodiscard]] Amplitude operator[](std::size_t i) const { return amps_.at(i); }
    [[nodiscard]] double norm_squared() const noexcept;

    // In-place gates. Each throws std::out_of_range for a qubit outside the register.
    StateVector& x(QubitId q);
    StateVector& z(QubitId q);
    StateVector& h(QubitId q);
    StateVector& cnot(QubitId control, QubitId target);
    StateVector& pauli(QubitId q, PauliCorrection corr);

    /// Prepares Bell(label) on (first, second). Both qubits must currently be
    /// in |0> and unentangled with the rest (std::logic_error otherwise).
    StateVector& bell_pair(QubitId first, QubitId second, BellLabel label);

    /// Rotates the Bell basis of (q1, q2) onto the computational basis
    /// (CNOT q1->q2, then H on q1) and back.
    StateVector& bell_to_computational(QubitId q1, QubitId q2);
    StateVector& computational_to_bell(QubitId q1, QubitId q2);

    /// Probability of reading `bit` on q.
    [[nodiscard]] double probability(QubitId q, bool bit) const;

    /// Collapses q onto `bit` and renormalizes. Throws std::domain_error if the
    /// outcome probability is below 1e-15.
    StateVector& project(QubitId q, bool bit);

    [[nodiscard]] std::size_t bit_position(QubitId q) const;

private:
    StateVector(std::size_t n_qubits, std::vector<Amplitude> amps)
        : n_qubits_(n_qubits), amps_(std::move(amps)) {}
    void check(QubitId q) const;

    std::size_t n_qubits_;
    std::vector<Amplitude> amps_;
};

/// Hermitian, unit-trace, positive semidefinite matrix over a small register.
class DensityMatrix {
public:
    explicit DensityMatrix(std::size_t dim);
    static DensityMatrix maximally_mixed(std::size_t dim);
    static DensityMatrix pure(const StateVector& state);

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] Amplitude& at(std::size_t row, std::size_t col) { return entries_.at(row * dim_ + col); }
    [[nodiscard]] Amplitude at(std::size_t row, std::size_t col) const { return entries_.at(row * dim_ + col); }

    [[nodiscard]] Amplitude trace() const;
    [[nodiscard]] bool is_hermitian(double tol = 1e-12) const;
    /// Ascending eigenvalues.
    [[nodiscard]] std::vector<double> eigenvalues() const;
    [[nodiscard]] double purity() const;

    DensityMatrix& operator+=(const DensityMatrix& other);
    DensityMatrix& operator*=(double scale);

private:
    std::size_t dim_;
    std::vector<Amplitude> entries_;
};

/// (1/2) * sum |eig(a - b)|.
[[nodiscard]] double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

[[nodiscard]] StateVector tensor(const StateVector& a, const StateVector& b);

[[nodiscard]] StateVector prepare_bell(BellLabel label);

/// Z^z X^x on q: the X factor acts first.
[[nodiscard]] StateVector apply_pauli(StateVector state, QubitId q, PauliCorrection corr);

/// Born probabilities of the four Bell outcomes on (q1, q2), indexed by BsmOutcome::index().
[[nodiscard]] std::array<double, 4> bell_probabilities(const StateVector& state, QubitId q1, QubitId q2);

/// Postselects outcome on (q1, q2). The pair is left in the Bell state the
/// outcome names. Throws std::domain_error for a zero-probability outcome.
[[nodiscard]] StateVector project_bell(StateVector state, QubitId q1, QubitId q2, BsmOutcome outcome);

/// Picks an index from `probabilities` by inverse-CDF on u in [0,1). Entries
/// below 1e-15 are never picked.
[[nodiscard]] std::size_t sample_index(std::span<const double> probabilities, double u);

struct BellMeasurement {
    BsmOutcome outcome;
    StateVector state;
};

struct ComputationalMeasurement {
    bool bit;
    StateVector state;
};

/// Throws std::invalid_argument when q1 == q2.
[[nodiscard]] BellMeasurement bell_measure(const StateVector& state, QubitId q1, QubitId q2, CounterRng& rng);
[[nodiscard]] ComputationalMeasurement measure_computational(const StateVector& state, QubitId q, CounterRng& rng);

/// Partial trace over every qubit not in `keep`. Kept qubits retain their
/// relative (big-endian) order. Throws std::invalid_argument for an empty or
/// duplicated keep-set, std::out_of_range for an unknown qubit.
[[nodiscard]] DensityMatrix reduced_density(const StateVector& state, std::span<const QubitId> keep);
[[nodiscard]] DensityMatrix reduced_density(const StateVector& state, std::initializer_list<QubitId> keep);

/// |<a|b>|^2, clamped to [0, 1]. Throws std::invalid_argument on dimension mismatch.
[[nodiscard]] double fidelity(const StateVector& a, const StateVector& b);

[[nodiscard]] inline bool same_up_to_phase(const StateVector& a, const StateVector& b) {
    return fidelity(a, b) >= kFidelityThreshold;
}

/// Returns the pure state of q when it is unentangled with the rest of the
/// register (purity within 1e-9 of 1); throws std::domain_error otherwise.
[[nodiscard]] StateVector factor_out_qubit(const StateVector& state, QubitId q);

}  // namespace qss
