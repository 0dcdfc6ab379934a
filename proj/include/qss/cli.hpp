#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include "qss/bell_tables.hpp"
#include "qss/statevec.hpp"

namespace qss::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kRejected = 2,
    kTableMismatch = 3,
    kWrongReconstruction = 4,  // accepted, but the recovered secret differs
};

enum class Format { text, structured };

/// Entry point behind the `qss` binary. `args` excludes the program name.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

/// Diffs `tables` against the published tables and prints every row.
int verify_tables(const BellTables& tables, Format format, std::ostream& out);

/// Parses "re+imi" style amplitudes: "0.6", "-0.8i", "0.36-0.48i", "1e-3+2i".
/// Throws std::invalid_argument.
[[nodiscard]] Amplitude parse_amplitude(std::string_view text);

/// Parses "a,b" into a normalized qubit. A norm off by more than 1e-12 is
/// rescaled and `warning` set; more than 1e-9 throws std::invalid_argument.
[[nodiscard]] StateVector parse_qubit(std::string_view text, bool* warning = nullptr);

}  // namespace qss::cli
