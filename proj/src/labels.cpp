#include "qss/labels.hpp"

#include <algorithm>
#include <cctype>

namespace qss {

namespace {

std::string two_bits(unsigned index) {
    return {char('0' + ((index >> 1) & 1U)), char('0' + (index & 1U))};
}

unsigned parse_two_bits(std::string_view text) {
    if (text.size() != 2 || (text[0] != '0' && text[0] != '1') || (text[1] != '0' && text[1] != '1')) {
        throw std::invalid_argument("expected a 2-bit string, got '" + std::string(text) + "'");
    }
    return (unsigned(text[0] - '0') << 1) | unsigned(text[1] - '0');
}

}  // namespace

std::string_view name(BellLabel label) {
    static constexpr std::string_view names[] = {"Phi+", "Psi+", "Phi-", "Psi-"};
    return names[label.index()];
}

std::string_view name(PauliCorrection corr) {
    static constexpr std::string_view names[] = {"I", "X", "Z", "ZX"};
    return names[corr.index()];
}

std::string bits(BellLabel label) { return two_bits(label.index()); }
std::string bits(BsmOutcome outcome) { return two_bits(outcome.index()); }
std::string bits(PauliCorrection corr) { return two_bits(corr.index()); }

BellLabel parse_bell_label(std::string_view text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return char(std::tolower(c)); });
    if (lower == "phi+") return kPhiPlus;
    if (lower == "psi+") return kPsiPlus;
    if (lower == "phi-") return kPhiMinus;
    if (lower == "psi-") return kPsiMinus;
    return BellLabel::from_index(parse_two_bits(text));
}

BsmOutcome parse_bsm_outcome(std::string_view text) { return BsmOutcome::from_index(parse_two_bits(text)); }

}  // namespace qss
