#pragma once

// State-vector route to the Bell-pair algebra. Every entry here is obtained by
// simulating the circuit and identifying the result by fidelity; none of it
// uses the closed-form rules in bell.hpp.

#include <array>

#include "qss/bell_tables.hpp"
#include "qss/labels.hpp"
#include "qss/statevec.hpp"

namespace qss::oracle {

/// Teleports `input` through Bell(channel), postselects the sender's BSM on
/// `bsm`, and returns the receiver's qubit.
[[nodiscard]] StateVector teleport(const StateVector& input, BellLabel channel, BsmOutcome bsm);

/// The unique Pauli P with P|input> == output up to phase. Throws
/// std::domain_error when no Pauli (or more than one) matches.
[[nodiscard]] PauliCorrection identify_pauli(const StateVector& input, const StateVector& output);

/// Encoding the receiver's qubit carries, found by teleporting two generic
/// inputs (one alone can be a Pauli eigenstate, which hides the encoding).
[[nodiscard]] PauliCorrection teleport_encoding(BellLabel channel, BsmOutcome bsm);

/// Bell state left between the outer halves after a BSM on the inner halves
/// of Bell(pair_sr1) (x) Bell(pair_r1r2), postselected on `bsm`.
[[nodiscard]] BellLabel swap_outcome(BellLabel pair_sr1, BellLabel pair_r1r2, BsmOutcome bsm);

/// Full five-qubit information-splitting circuit
///   q0 secret | q1 r1 (S) | q2 r1' (R1) | q3 r2' (R1) | q4 r2 (R2)
/// with R1's BSM on (q2,q3) and S's BSM on (q0,q1) postselected. Returns R2's qubit.
[[nodiscard]] StateVector splitting_output(const StateVector& secret, BellLabel r1, BellLabel r2,
                                           BsmOutcome bsm_r1, BsmOutcome bsm_s);

/// Encoding on R2's qubit after the full splitting circuit.
[[nodiscard]] PauliCorrection end_to_end_encoding(BellLabel r1, BellLabel r2, BsmOutcome bsm_r1, BsmOutcome bsm_s);

/// Both lookup tables, regenerated cell by cell from the simulator.
[[nodiscard]] BellTables generate_tables();

}  // namespace qss::oracle
