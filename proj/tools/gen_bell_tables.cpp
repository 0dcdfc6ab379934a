// Writes the teleportation and swapping lookup tables, as found by the
// state-vector simulator, into a header compiled into the bell module.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "qss/bell_oracle.hpp"

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: gen_bell_tables <output-header>\n";
        return 1;
    }
    qss::BellTables tables;
    try {
        tables = qss::oracle::generate_tables();
    } catch (const std::exception& e) {
        std::cerr << "gen_bell_tables: oracle failed: " << e.what() << '\n';
        return 1;
    }

    std::ofstream out(argv[1]);
    if (!out) {
        std::cerr << "gen_bell_tables: cannot write " << argv[1] << '\n';
        return 1;
    }
    out << "// Generated by gen_bell_tables from the state-vector oracle. Do not edit.\n"
        << "#pragma once\n\n#include <array>\n#include <cstdint>\n\n"
        << "namespace qss::generated {\n\n"
        << "// PauliCorrection::index() per (channel * 4 + bsm)\n"
        << "inline constexpr std::array<std::uint8_t, 16> kTeleport{";
    for (std::size_t i = 0; i < tables.teleport.size(); ++i) {
        out << (i ? ", " : "") << tables.teleport[i].index();
    }
    out << "};\n\n// BellLabel::index() per ((pair_sr1 * 4 + pair_r1r2) * 4 + bsm)\n"
        << "inline constexpr std::array<std::uint8_t, 64> kSwap{";
    for (std::size_t i = 0; i < tables.swap.size(); ++i) {
        out << (i ? ", " : "") << tables.swap[i].index();
    }
    out << "};\n\n}  // namespace qss::generated\n";
    return out ? EXIT_SUCCESS : EXIT_FAILURE;
}
