#pragma once

#include <array>

#include "qss/labels.hpp"

namespace qss {

/// Lookup tables for teleportation corrections and swapping outcomes.
struct BellTables {
    std::array<PauliCorrection, 16> teleport{};  // index: channel * 4 + bsm
    std::array<BellLabel, 64> swap{};            // index: (pair_sr1 * 4 + pair_r1r2) * 4 + bsm

    [[nodiscard]] static constexpr std::size_t teleport_index(BellLabel channel, BsmOutcome bsm) {
        return channel.index() * 4 + bsm.index();
    }
    [[nodiscard]] static constexpr std::size_t swap_index(BellLabel a, BellLabel b, BsmOutcome bsm) {
        return (a.index() * 4 + b.index()) * 4 + bsm.index();
    }
    friend bool operator==(const BellTables&, const BellTables&) = default;
};

}  // namespace qss
