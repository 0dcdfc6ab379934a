#include "qss/bell.hpp"

#include <algorithm>
#include <stdexcept>

#include "qss/generated/bell_tables.inc"

namespace qss {

namespace {

BellTables load_generated() {
    BellTables t;
    for (std::size_t i = 0; i < t.teleport.size(); ++i) {
        t.teleport[i] = PauliCorrection::from_index(generated::kTeleport[i]);
    }
    for (std::size_t i = 0; i < t.swap.size(); ++i) t.swap[i] = BellLabel::from_index(generated::kSwap[i]);
    return t;
}

// Published teleportation table: rows Phi+, Psi+, Phi-, Psi-; columns ss' = 00, 01, 10, 11.
constexpr PauliCorrection kPrintedTable1[4][4] = {
    {kIdentity, kPauliX, kPauliZ, kPauliZX},
    {kPauliX, kIdentity, kPauliZX, kPauliZ},
    {kPauliZ, kPauliZX, kIdentity, kPauliX},
    {kPauliZX, kPauliZ, kPauliX, kIdentity},
};

struct PrintedPair {
    BellLabel first;
    BellLabel second;
};

// Published swapping table. Each row lists four initial |.>_sr1 |.>_r1r2
// systems and the four |.>_R1 |.>_sr2 results any of them can turn into.
constexpr PrintedPair kPrintedTable2Initial[4][4] = {
    {{kPhiPlus, kPhiPlus}, {kPsiPlus, kPsiPlus}, {kPhiMinus, kPhiMinus}, {kPsiMinus, kPsiMinus}},
    {{kPhiPlus, kPsiPlus}, {kPsiPlus, kPhiPlus}, {kPhiMinus, kPsiMinus}, {kPsiMinus, kPhiMinus}},
    {{kPhiPlus, kPhiMinus}, {kPsiPlus, kPsiMinus}, {kPhiMinus, kPhiPlus}, {kPsiMinus, kPsiPlus}},
    {{kPhiPlus, kPsiMinus}, {kPsiPlus, kPhiMinus}, {kPhiMinus, kPsiPlus}, {kPsiMinus, kPhiPlus}},
};
constexpr PrintedPair kPrintedTable2Result[4][4] = {
    {{kPhiPlus, kPhiPlus}, {kPsiPlus, kPsiPlus}, {kPhiMinus, kPhiMinus}, {kPsiMinus, kPsiMinus}},
    {{kPhiPlus, kPsiPlus}, {kPsiPlus, kPhiPlus}, {kPhiMinus, kPsiMinus}, {kPsiMinus, kPhiMinus}},
    {{kPhiPlus, kPhiMinus}, {kPsiPlus, kPsiMinus}, {kPhiMinus, kPhiPlus}, {kPsiMinus, kPsiPlus}},
    {{kPhiPlus, kPsiMinus}, {kPsiPlus, kPhiMinus}, {kPhiMinus, kPsiPlus}, {kPsiMinus, kPhiPlus}},
};

std::array<Table1Entry, 16> build_table1() {
    std::array<Table1Entry, 16> out{};
    std::size_t k = 0;
    for (unsigned row = 0; row < 4; ++row) {
        for (unsigned col = 0; col < 4; ++col) {
            out[k++] = {kAllBellLabels[row], BsmOutcome::from_index(col), kPrintedTable1[row][col]};
        }
    }
    return out;
}

std::array<Table2Entry, 64> build_table2() {
    std::array<Table2Entry, 64> out{};
    std::size_t k = 0;
    for (unsigned row = 0; row < 4; ++row) {
        for (const auto& initial : kPrintedTable2Initial[row]) {
            for (const auto& result : kPrintedTable2Result[row]) {
                out[k++] = {initial.first, initial.second, as_outcome(result.first), result.second};
            }
        }
    }
    return out;
}

}  // namespace

const BellTables& shipped_tables() {
    static const BellTables tables = load_generated();
    return tables;
}

PauliCorrection teleport_correction(BellLabel channel, BsmOutcome bsm) {
    return shipped_tables().teleport[BellTables::teleport_index(channel, bsm)];
}

BellLabel swap_result(BellLabel pair_sr1, BellLabel pair_r1r2, BsmOutcome bsm_r1) {
    return shipped_tables().swap[BellTables::swap_index(pair_sr1, pair_r1r2, bsm_r1)];
}

BsmOutcome infer_remote_bsm(BellLabel pair_a, BellLabel pair_b, BsmOutcome own_bsm) {
    const BellLabel observed = as_label(own_bsm);
    unsigned hits = 0;
    BsmOutcome found;
    for (unsigned o = 0; o < 4; ++o) {
        const auto candidate = BsmOutcome::from_index(o);
        if (swap_result(pair_a, pair_b, candidate) == observed) {
            found = candidate;
            ++hits;
        }
    }
    if (hits != 1) throw std::logic_error("swap_result is not a bijection in the BSM outcome");
    return found;
}

PauliCorrection end_to_end_correction(BellLabel r1, BellLabel r2, BsmOutcome bsm_r1, BsmOutcome bsm_s) {
    return teleport_correction(swap_result(r1, r2, bsm_r1), bsm_s);
}

std::span<const Table1Entry> reference_table1() {
    static const auto table = build_table1();
    return table;
}

std::span<const Table2Entry> reference_table2() {
    static const auto table = build_table2();
    return table;
}

std::size_t TableReport::teleport_matches() const {
    return std::size_t(std::count_if(teleport_rows.begin(), teleport_rows.end(), [](const auto& r) { return r.matches; }));
}

std::size_t TableReport::swap_matches() const {
    return std::size_t(std::count_if(swap_rows.begin(), swap_rows.end(), [](const auto& r) { return r.matches; }));
}

TableReport compare_with_reference(const BellTables& candidate) {
    TableReport report;
    for (const auto& e : reference_table1()) {
        const auto got = candidate.teleport[BellTables::teleport_index(e.channel, e.ss)];
        report.teleport_rows.push_back({std::string(name(e.channel)) + " ss'=" + bits(e.ss),
                                        std::string(name(e.encoding)), std::string(name(got)), got == e.encoding});
    }
    for (const auto& e : reference_table2()) {
        const auto got = candidate.swap[BellTables::swap_index(e.pair_sr1, e.pair_r1r2, e.bsm_r1)];
        report.swap_rows.push_back({std::string(name(e.pair_sr1)) + " (x) " + std::string(name(e.pair_r1r2)) +
                                        " R1=" + std::string(name(as_label(e.bsm_r1))),
                                    std::string(name(e.swapped)), std::string(name(got)), got == e.swapped});
    }
    return report;
}

}  // namespace qss
