#pragma once

// Closed-form Bell-pair algebra: teleportation corrections, entanglement
// swapping outcomes and the composed decoding rule for the five-piece split.
//
// The correction returned for a teleportation is the Pauli the receiver
// applies to recover the input. Z and X are self-inverse up to a global phase,
// so the encoding the qubit carries and its correction share one (z, x) pair.

#include <span>
#include <string>
#include <vector>

#include "qss/bell_tables.hpp"
#include "qss/labels.hpp"

namespace qss {

[[nodiscard]] PauliCorrection teleport_correction(BellLabel channel, BsmOutcome bsm);

/// Bell state between S and R2 after R1 measures its halves of
/// Bell(pair_sr1) and Bell(pair_r1r2) with outcome bsm_r1.
[[nodiscard]] BellLabel swap_result(BellLabel pair_sr1, BellLabel pair_r1r2, BsmOutcome bsm_r1);

/// Remote BSM outcome o with swap_result(pair_a, pair_b, o) equal to the Bell
/// state the local party observed in own_bsm.
[[nodiscard]] BsmOutcome infer_remote_bsm(BellLabel pair_a, BellLabel pair_b, BsmOutcome own_bsm);

/// Total encoding on R2's qubit: swapping with R1's outcome, then teleportation
/// with S's outcome over the swapped pair.
[[nodiscard]] PauliCorrection end_to_end_correction(BellLabel r1, BellLabel r2, BsmOutcome bsm_r1, BsmOutcome bsm_s);

/// A phase flip leaves a computational-basis bit alone; only X matters.
[[nodiscard]] constexpr bool decode_classical(bool xi_prime, PauliCorrection corr) { return xi_prime != corr.x_exp; }

/// Tables compiled into this library (generated from the simulator at build time).
[[nodiscard]] const BellTables& shipped_tables();

struct Table1Entry {
    BellLabel channel;
    BsmOutcome ss;
    PauliCorrection encoding;
};

struct Table2Entry {
    BellLabel pair_sr1;
    BellLabel pair_r1r2;
    BsmOutcome bsm_r1;
    BellLabel swapped;
};

/// The published teleportation table, 16 entries in printed row order.
[[nodiscard]] std::span<const Table1Entry> reference_table1();
/// The published swapping table expanded to its 64 transformations.
[[nodiscard]] std::span<const Table2Entry> reference_table2();

struct TableRow {
    std::string description;
    std::string expected;
    std::string actual;
    bool matches = false;
};

struct TableReport {
    std::vector<TableRow> teleport_rows;
    std::vector<TableRow> swap_rows;

    [[nodiscard]] std::size_t teleport_matches() const;
    [[nodiscard]] std::size_t swap_matches() const;
    [[nodiscard]] bool all_match() const {
        return teleport_matches() == teleport_rows.size() && swap_matches() == swap_rows.size();
    }
};

/// Diffs `candidate` cell by cell against the published tables.
[[nodiscard]] TableReport compare_with_reference(const BellTables& candidate);

}  // namespace qss
