#include "qss/bell_oracle.hpp"

#include <optional>
#include <stdexcept>

namespace qss::oracle {

namespace {

// Two inputs with no shared Pauli eigenbasis.
StateVector generic_input_a() { return StateVector::single_qubit({0.6, 0.0}, {0.48, 0.64}); }
StateVector generic_input_b() { return StateVector::single_qubit({0.8, 0.0}, {0.36, -0.48}); }

constexpr QubitId q(std::size_t i) { return QubitId{i}; }

}  // namespace

StateVector teleport(const StateVector& input, BellLabel channel, BsmOutcome bsm) {
    if (input.qubits() != 1) throw std::invalid_argument("teleport input must be one qubit");
    StateVector reg = tensor(input, StateVector(2));
    reg.bell_pair(q(1), q(2), channel);
    reg = project_bell(std::move(reg), q(0), q(1), bsm);
    return factor_out_qubit(reg, q(2));
}

PauliCorrection identify_pauli(const StateVector& input, const StateVector& output) {
    std::optional<PauliCorrection> found;
    for (unsigned i = 0; i < 4; ++i) {
        const auto p = PauliCorrection::from_index(i);
        if (same_up_to_phase(apply_pauli(input, q(0), p), output)) {
            if (found) throw std::domain_error("Pauli encoding is not unique for this input");
            found = p;
        }
    }
    if (!found) throw std::domain_error("output is not a Pauli image of the input");
    return *found;
}

PauliCorrection teleport_encoding(BellLabel channel, BsmOutcome bsm) {
    const auto a = generic_input_a();
    const auto b = generic_input_b();
    const auto pa = identify_pauli(a, teleport(a, channel, bsm));
    const auto pb = identify_pauli(b, teleport(b, channel, bsm));
    if (pa != pb) throw std::domain_error("teleportation encoding depends on the input state");
    return pa;
}

BellLabel swap_outcome(BellLabel pair_sr1, BellLabel pair_r1r2, BsmOutcome bsm) {
    StateVector reg(4);
    reg.bell_pair(q(0), q(1), pair_sr1);
    reg.bell_pair(q(2), q(3), pair_r1r2);
    reg = project_bell(std::move(reg), q(1), q(2), bsm);

    std::optional<BellLabel> found;
    for (const auto label : kAllBellLabels) {
        StateVector expected(4);
        expected.bell_pair(q(1), q(2), as_label(bsm));
        expected.bell_pair(q(0), q(3), label);
        if (same_up_to_phase(reg, expected)) {
            if (found) throw std::domain_error("swapped pair matches two Bell states");
            found = label;
        }
    }
    if (!found) throw std::domain_error("swapped pair is not a Bell state");
    return *found;
}

StateVector splitting_output(const StateVector& secret, BellLabel r1, BellLabel r2, BsmOutcome bsm_r1,
                             BsmOutcome bsm_s) {
    if (secret.qubits() != 1) throw std::invalid_argument("secret must be one qubit");
    StateVector reg = tensor(secret, StateVector(4));
    reg.bell_pair(q(1), q(2), r1);
    reg.bell_pair(q(4), q(3), r2);
    reg = project_bell(std::move(reg), q(2), q(3), bsm_r1);
    reg = project_bell(std::move(reg), q(0), q(1), bsm_s);
    return factor_out_qubit(reg, q(4));
}

PauliCorrection end_to_end_encoding(BellLabel r1, BellLabel r2, BsmOutcome bsm_r1, BsmOutcome bsm_s) {
    const auto a = generic_input_a();
    const auto b = generic_input_b();
    const auto pa = identify_pauli(a, splitting_output(a, r1, r2, bsm_r1, bsm_s));
    const auto pb = identify_pauli(b, splitting_output(b, r1, r2, bsm_r1, bsm_s));
    if (pa != pb) throw std::domain_error("end-to-end encoding depends on the input state");
    return pa;
}

BellTables generate_tables() {
    BellTables t{};
    for (const auto channel : kAllBellLabels) {
        for (unsigned o = 0; o < 4; ++o) {
            const auto bsm = BsmOutcome::from_index(o);
            t.teleport[BellTables::teleport_index(channel, bsm)] = teleport_encoding(channel, bsm);
        }
    }
    for (const auto a : kAllBellLabels) {
        for (const auto b : kAllBellLabels) {
            for (unsigned o = 0; o < 4; ++o) {
                const auto bsm = BsmOutcome::from_index(o);
                t.swap[BellTables::swap_index(a, b, bsm)] = swap_outcome(a, b, bsm);
            }
        }
    }
    return t;
}

}  // namespace qss::oracle
