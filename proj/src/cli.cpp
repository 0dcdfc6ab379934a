#include "qss/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>
#include <vector>

#include "qss/bell.hpp"
#include "qss/protocol.hpp"
#include "qss/security.hpp"

namespace qss::cli {

namespace {

double parse_real(std::string_view s, std::string_view whole) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw std::invalid_argument("malformed amplitude '" + std::string(whole) + "'");
    }
    return v;
}

struct RunOptions {
    std::string scheme = "qss22";
    std::string secret;
    std::uint64_t seed = 0;
    std::uint64_t trials = 1;
    std::string attack = "none";
    std::string out;
    std::string format = "text";
};

struct AnalyzeOptions {
    std::string view;
    std::string attack;
    bool uniformity = false;
    bool mixedness = false;
    std::uint64_t trials = 10000;
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "text";
};

Format to_format(const std::string& s) { return s == "structured" ? Format::structured : Format::text; }

int emit(const std::string& content, const std::string& path, std::ostream& out, std::ostream& err) {
    if (path.empty()) {
        out << content;
        return kOk;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        err << "error: cannot open '" << path << "' for writing\n";
        return kUsage;
    }
    file << content;
    return file ? kOk : kUsage;
}

std::string render(const Transcript& t, Format f) { return f == Format::structured ? to_jsonl(t) : to_text(t); }

int cmd_run_22(const RunOptions& o, std::ostream& out, std::ostream& err) {
    const std::string& bits_in = o.secret;
    if (bits_in.empty() || bits_in.find_first_not_of("01") != std::string::npos) {
        err << "error: qss22 secret must be a non-empty bit string\n";
        return kUsage;
    }
    const AttackModel attack = AttackModel::parse(o.attack);
    const Format format = to_format(o.format);
    const std::uint64_t width = bits_in.size();

    std::string transcripts;
    std::string summary;
    std::uint64_t rejected = 0;
    std::uint64_t wrong = 0;
    for (std::uint64_t t = 0; t < o.trials; ++t) {
        std::string recovered;
        for (std::uint64_t j = 0; j < width; ++j) {
            const bool bit = bits_in[j] == '1';
            const Run22 run = run_qss22(bit, o.seed, attack, t * width + j);
            if (format == Format::text && !transcripts.empty()) transcripts += '\n';
            transcripts += render(run.transcript, format);
            if (!run.accepted()) {
                ++rejected;
                recovered += '-';
            } else {
                if (*run.reconstructed != bit) ++wrong;
                recovered += *run.reconstructed ? '1' : '0';
            }
        }
        summary += "trial " + std::to_string(t) + ": secret=" + bits_in + " reconstructed=" + recovered + "\n";
    }

    if (const int rc = emit(transcripts, o.out, out, err); rc != kOk) return rc;
    (o.out.empty() && format == Format::structured ? err : out) << summary;
    if (rejected > 0) return kRejected;
    return wrong > 0 ? kWrongReconstruction : kOk;
}

int cmd_run_55(const RunOptions& o, std::ostream& out, std::ostream& err) {
    if (AttackModel::parse(o.attack).kind != AttackKind::none) {
        err << "error: attacks apply to the qss22 scheme only\n";
        return kUsage;
    }
    bool renormalized = false;
    const StateVector secret = parse_qubit(o.secret, &renormalized);
    if (renormalized) err << "warning: secret amplitudes renormalized\n";
    const Format format = to_format(o.format);

    std::string transcripts;
    std::string summary;
    bool wrong = false;
    for (std::uint64_t t = 0; t < o.trials; ++t) {
        const Run55 run = run_qss55(secret[0], secret[1], o.seed, t);
        if (format == Format::text && !transcripts.empty()) transcripts += '\n';
        transcripts += render(run.transcript, format);
        const double f = fidelity(reconstruct55(run.shares), secret);
        if (f < kFidelityThreshold) wrong = true;
        std::ostringstream line;
        line.precision(17);
        line << "trial " << t << ": fidelity=" << f << "\n";
        summary += line.str();
    }

    if (const int rc = emit(transcripts, o.out, out, err); rc != kOk) return rc;
    (o.out.empty() && format == Format::structured ? err : out) << summary;
    return wrong ? kWrongReconstruction : kOk;
}

int cmd_run(const RunOptions& o, std::ostream& out, std::ostream& err) {
    if (o.secret.empty()) {
        err << "error: --secret is required\n";
        return kUsage;
    }
    return o.scheme == "qss22" ? cmd_run_22(o, out, err) : cmd_run_55(o, out, err);
}

int cmd_analyze(const AnalyzeOptions& o, std::ostream& out, std::ostream& err) {
    const int chosen = int(!o.view.empty()) + int(!o.attack.empty()) + int(o.uniformity) + int(o.mixedness);
    if (chosen != 1) {
        err << "error: choose exactly one of --view, --attack, --uniformity, --mixedness\n";
        return kUsage;
    }
    const bool structured = to_format(o.format) == Format::structured;
    std::string report;
    if (!o.view.empty()) {
        const auto r = mutual_information_22(AdversaryView::parse(o.view));
        report = structured ? to_jsonl(r) : to_text(r);
    } else if (!o.attack.empty()) {
        const auto r = attack_sweep(AttackModel::parse(o.attack), o.trials, o.seed);
        report = structured ? to_jsonl(r) : to_text(r);
    } else if (o.uniformity) {
        const auto r = public_transcript_uniformity(o.trials, o.seed);
        report = structured ? to_jsonl(r) : to_text(r);
    } else {
        std::vector<MixednessEntry> entries;
        for (unsigned k = 0; k < 16; ++k) entries.push_back({PieceSet(k), encrypted_qubit_mixedness_55(PieceSet(k))});
        report = structured ? to_jsonl(entries) : to_text(entries);
    }
    return emit(report, o.out, out, err);
}

}  // namespace

Amplitude parse_amplitude(std::string_view text) {
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    }
    if (s.empty()) throw std::invalid_argument("empty amplitude");
    if (s.back() != 'i') return {parse_real(s, text), 0.0};

    s.pop_back();
    // Split at the last sign that is not part of an exponent.
    std::size_t split = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    const std::string_view body(s);
    const std::string_view re = split == std::string::npos ? std::string_view{} : body.substr(0, split);
    std::string im(split == std::string::npos ? body : body.substr(split));
    if (im.empty() || im == "+" || im == "-") im += "1";
    return {re.empty() ? 0.0 : parse_real(re, text), parse_real(im, text)};
}

StateVector parse_qubit(std::string_view text, bool* warning) {
    const auto comma = text.find(',');
    if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos) {
        throw std::invalid_argument("qubit secret must be two amplitudes 'a,b'");
    }
    const Amplitude a = parse_amplitude(text.substr(0, comma));
    const Amplitude b = parse_amplitude(text.substr(comma + 1));
    const double norm2 = std::norm(a) + std::norm(b);
    if (std::abs(norm2 - 1.0) > 1e-9) throw std::invalid_argument("qubit secret is not normalized");
    const bool rescale = std::abs(norm2 - 1.0) > 1e-12;
    if (warning) *warning = rescale;
    const double n = rescale ? std::sqrt(norm2) : 1.0;
    return StateVector::single_qubit(a / n, b / n);
}

int verify_tables(const BellTables& tables, Format format, std::ostream& out) {
    const TableReport report = compare_with_reference(tables);
    if (format == Format::structured) {
        using nlohmann::ordered_json;
        ordered_json h{{"schema", "qss-report/1"}, {"kind", "verify-tables"}};
        out << h.dump() << '\n';
        const auto rows = [&](std::string_view table, const std::vector<TableRow>& v) {
            for (const auto& r : v) {
                ordered_json j{{"table", table},
                               {"case", r.description},
                               {"expected", r.expected},
                               {"actual", r.actual},
                               {"match", r.matches}};
                out << j.dump() << '\n';
            }
        };
        rows("teleport", report.teleport_rows);
        rows("swap", report.swap_rows);
        ordered_json summary{{"teleport_verified", report.teleport_matches()},
                             {"teleport_total", report.teleport_rows.size()},
                             {"swap_verified", report.swap_matches()},
                             {"swap_total", report.swap_rows.size()},
                             {"all_match", report.all_match()}};
        out << summary.dump() << '\n';
    } else {
        const auto rows = [&](std::string_view title, const std::vector<TableRow>& v) {
            out << title << '\n';
            for (const auto& r : v) {
                out << (r.matches ? "  ok    " : "  FAIL  ") << r.description << " -> " << r.actual;
                if (!r.matches) out << " (expected " << r.expected << ")";
                out << '\n';
            }
        };
        rows("teleportation (channel, ss') -> encoding", report.teleport_rows);
        rows("swapping (S-R1 pair, R1-R2 pair, R1R1') -> S-R2 pair", report.swap_rows);
        out << report.teleport_matches() << '/' << report.teleport_rows.size() << " teleportation entries, "
            << report.swap_matches() << '/' << report.swap_rows.size() << " swapping entries verified\n";
    }
    return report.all_match() ? kOk : kTableMismatch;
}

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quantum secret sharing simulator", "qss"};
    app.require_subcommand(1);
    const std::vector<std::string> formats{"text", "structured"};

    RunOptions run;
    auto* run_cmd = app.add_subcommand("run", "Simulate a secret-sharing run and write its transcript");
    run_cmd->add_option("--scheme", run.scheme, "qss22 or qss55")->check(CLI::IsMember({"qss22", "qss55"}));
    run_cmd->add_option("--secret", run.secret, "Bit string (qss22) or amplitudes 'a,b' (qss55)");
    run_cmd->add_option("--seed", run.seed, "RNG seed");
    run_cmd->add_option("--trials", run.trials, "Independent repetitions")->check(CLI::PositiveNumber);
    run_cmd->add_option("--attack", run.attack, "Attack model (qss22)");
    run_cmd->add_option("--out", run.out, "Transcript file (default: stdout)");
    run_cmd->add_option("--format", run.format, "text or structured")->check(CLI::IsMember(formats));

    std::string tables_out;
    std::string tables_format = "text";
    auto* tables_cmd = app.add_subcommand("verify-tables", "Regenerate the Bell tables and diff them against the published ones");
    tables_cmd->add_option("--out", tables_out, "Report file (default: stdout)");
    tables_cmd->add_option("--format", tables_format, "text or structured")->check(CLI::IsMember(formats));

    AnalyzeOptions analyze;
    auto* analyze_cmd = app.add_subcommand("analyze", "Secrecy and attack analyses");
    analyze_cmd->add_option("--view", analyze.view, "r1-alone, r2-alone, public, all-shares or r1+r2+public mixes");
    analyze_cmd->add_option("--attack", analyze.attack, "Attack model to sweep");
    analyze_cmd->add_flag("--uniformity", analyze.uniformity, "Public-message uniformity check");
    analyze_cmd->add_flag("--mixedness", analyze.mixedness, "(5,5) encrypted-qubit mixedness per known piece set");
    analyze_cmd->add_option("--trials", analyze.trials, "Sampled trials")->check(CLI::PositiveNumber);
    analyze_cmd->add_option("--seed", analyze.seed, "RNG seed");
    analyze_cmd->add_option("--out", analyze.out, "Report file (default: stdout)");
    analyze_cmd->add_option("--format", analyze.format, "text or structured")->check(CLI::IsMember(formats));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kUsage;
    }

    try {
        if (run_cmd->parsed()) return cmd_run(run, out, err);
        if (analyze_cmd->parsed()) return cmd_analyze(analyze, out, err);
        std::ostringstream report;
        const int rc = verify_tables(shipped_tables(), to_format(tables_format), report);
        const int written = emit(report.str(), tables_out, out, err);
        return rc != kOk ? rc : written;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

}  // namespace qss::cli
