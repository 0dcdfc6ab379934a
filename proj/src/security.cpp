#include "qss/security.hpp"

#include <algorithm>
#include <atomic>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <json.hpp>
#include <map>
#include <sstream>
#include <thread>

namespace qss {

using nlohmann::ordered_json;

namespace {

constexpr std::array<double, 2> kHalf{0.5, 0.5};

Run22 run_with_random_secret(OutcomeSource& source, const AttackModel& attack, const Qss22Config& config) {
    const bool secret = source.pick(kHalf) == 1;
    return simulate_qss22(secret, source, attack, config);
}

std::string published_ss(const Run22& run) {
    return run.shares.public_ss ? bits(*run.shares.public_ss) : "-";
}

StateVector default_secret_qubit() { return StateVector::single_qubit({0.6, 0.0}, {0.0, 0.8}); }

ordered_json report_header(std::string_view kind) {
    ordered_json h;
    h["schema"] = "qss-report/1";
    h["kind"] = kind;
    return h;
}

ordered_json rationals(const std::vector<Rational>& v) {
    auto arr = ordered_json::array();
    for (const auto& r : v) arr.push_back(r.to_string());
    return arr;
}

}  // namespace

// ---------------------------------------------------------------------------

AdversaryView AdversaryView::parse(std::string_view spec) {
    if (spec == "r1-alone") return {true, false, false};
    if (spec == "r2-alone") return {false, true, false};
    if (spec == "all-shares") return {true, true, true};
    AdversaryView v;
    std::size_t start = 0;
    while (start <= spec.size()) {
        const auto end = std::min(spec.find('+', start), spec.size());
        const auto token = spec.substr(start, end - start);
        if (token == "r1") {
            v.r1 = true;
        } else if (token == "r2") {
            v.r2 = true;
        } else if (token == "public") {
            v.public_tap = true;
        } else {
            throw std::invalid_argument("unknown view '" + std::string(spec) + "'");
        }
        start = end + 1;
    }
    return v;
}

std::string AdversaryView::to_string() const {
    std::string out;
    const auto add = [&](std::string_view s) {
        if (!out.empty()) out += '+';
        out += s;
    };
    if (r1) add("r1");
    if (r2) add("r2");
    if (public_tap) add("public");
    return out.empty() ? "nothing" : out;
}

std::string observe(const Run22& run, const AdversaryView& view) {
    std::string key;
    if (view.r1) {
        key += "r1r1'=" + bits(run.tokens.r1_receiver) + " R1R1'=" + bits(run.split.bsm_r1) +
               " ss'@R1=" + published_ss(run) + ";";
    }
    if (view.r2) {
        key += std::string("xi'=") + (run.split.xi_prime ? "1" : "0") + " r2r2'=" + bits(run.tokens.r2_receiver) +
               " ss'@R2=" + published_ss(run) + ";";
    }
    if (view.public_tap) {
        key += "tok1=" + bits(run.token_r1) + " tok2=" + (run.token_r2 ? "1" : "0") + " ss'=" + published_ss(run) + ";";
    }
    return key;
}

std::vector<WeightedRun22> enumerate_qss22(const AttackModel& attack, const Qss22Config& config) {
    std::vector<WeightedRun22> out;
    for_each_branch([&](OutcomeSource& source) { return run_with_random_secret(source, attack, config); },
                    [&](Run22 run, Rational w) { out.push_back({w, std::move(run)}); });
    return out;
}

SecrecyReport mutual_information_22(const AdversaryView& view) {
    const auto cases = enumerate_qss22();

    std::map<std::string, std::array<Rational, 2>> joint;
    std::array<Rational, 2> secret_marginal{};
    for (const auto& c : cases) {
        auto& row = joint[observe(c.run, view)];
        row[c.run.secret] += c.weight;
        secret_marginal[c.run.secret] += c.weight;
    }

    SecrecyReport r;
    r.view = view.to_string();
    r.cases_enumerated = cases.size();
    r.exactly_independent = true;
    r.determines_secret = true;
    double mi = 0.0;
    Rational success;
    for (const auto& [obs, row] : joint) {
        const Rational p_obs = row[0] + row[1];
        for (int s = 0; s < 2; ++s) {
            if (row[s] != secret_marginal[s] * p_obs) r.exactly_independent = false;
            if (row[s].num == 0) continue;
            const Rational ratio = row[s] / (secret_marginal[s] * p_obs);
            mi += row[s].to_double() * std::log2(ratio.to_double());
        }
        if (row[0].num != 0 && row[1].num != 0) r.determines_secret = false;
        success += std::max(row[0], row[1]);
    }
    r.mutual_information_bits = r.exactly_independent ? 0.0 : mi;
    r.guess_success = success;
    r.guess_advantage = success - Rational(1, 2);
    return r;
}

// ---------------------------------------------------------------------------

std::string piece_set_name(PieceSet known) {
    static constexpr std::string_view names[] = {"s1s1'", "s2s2'", "R1R1'", "ss'"};
    std::string out = "{";
    for (unsigned i = 0; i < 4; ++i) {
        if (!known.test(i)) continue;
        if (out.size() > 1) out += ",";
        out += names[i];
    }
    return out + "}";
}

DensityMatrix averaged_encrypted_qubit(PieceSet known, const std::array<unsigned, 4>& values,
                                       const StateVector& secret) {
    DensityMatrix sum(2);
    unsigned terms = 0;
    for (unsigned full = 0; full < 256; ++full) {
        std::array<unsigned, 4> v{full & 3U, (full >> 2) & 3U, (full >> 4) & 3U, (full >> 6) & 3U};
        bool match = true;
        for (unsigned p = 0; p < 4; ++p) {
            if (known.test(p) && v[p] != values[p]) match = false;
        }
        if (!match) continue;
        // Picks in protocol order: s1, s2, then R1's and S's BSM outcomes.
        ScriptedOutcomes script({v[0], v[1], v[2], v[3]});
        const Run55 run = simulate_qss55(secret, script);
        sum += DensityMatrix::pure(*run.shares.qubit);
        ++terms;
    }
    sum *= 1.0 / double(terms);
    return sum;
}

double encrypted_qubit_mixedness_55(PieceSet known, const StateVector& secret) {
    const auto mixed = DensityMatrix::maximally_mixed(2);
    double worst = 0.0;
    const unsigned assignments = 1U << (2 * known.count());
    for (unsigned a = 0; a < assignments; ++a) {
        std::array<unsigned, 4> values{};
        unsigned shift = 0;
        for (unsigned p = 0; p < 4; ++p) {
            if (!known.test(p)) continue;
            values[p] = (a >> shift) & 3U;
            shift += 2;
        }
        worst = std::max(worst, trace_distance(averaged_encrypted_qubit(known, values, secret), mixed));
    }
    return worst;
}

double encrypted_qubit_mixedness_55(PieceSet known) {
    return encrypted_qubit_mixedness_55(known, default_secret_qubit());
}

// ---------------------------------------------------------------------------

Rational exact_detection_rate(const AttackModel& attack) {
    Rational rejected;
    for_each_branch([&](OutcomeSource& source) { return run_with_random_secret(source, attack, {}); },
                    [&](const Run22& run, Rational w) {
                        if (!run.accepted()) rejected += w;
                    });
    return rejected;
}

AttackSweepReport attack_sweep(const AttackModel& attack, std::uint64_t trials, std::uint64_t seed) {
    if (trials == 0) throw std::invalid_argument("attack_sweep needs at least one trial");
    AttackSweepReport r;
    r.attack = attack;
    r.trials = trials;
    r.seed = seed;

    // Each trial owns its stream, so the tally does not depend on scheduling.
    const unsigned workers = std::max(1U, std::min(std::thread::hardware_concurrency(), 8U));
    std::atomic<std::uint64_t> detected{0};
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                std::uint64_t local = 0;
                for (std::uint64_t i = w; i < trials; i += workers) {
                    SampledOutcomes source{CounterRng(seed, i)};
                    if (!run_with_random_secret(source, attack, {}).accepted()) ++local;
                }
                detected += local;
            });
        }
    }
    r.detected = detected;
    const double n = double(trials);
    const double p = double(r.detected) / n;
    r.detection_rate = p;

    const double z2 = kZ99 * kZ99;
    const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
    const double half = kZ99 * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / (1 + z2 / n);
    r.ci_low = std::max(0.0, centre - half);
    r.ci_high = std::min(1.0, centre + half);

    r.exact_rate = exact_detection_rate(attack);
    const double q = r.exact_rate->to_double();
    const double band = kZ99 * std::sqrt(q * (1 - q) / n);
    r.band_low = q - band;
    r.band_high = q + band;
    r.consistent_with_exact = p >= r.band_low && p <= r.band_high;
    return r;
}

// ---------------------------------------------------------------------------

double chi_square_p_value(double statistic, unsigned degrees_of_freedom) {
    if (degrees_of_freedom == 0) throw std::invalid_argument("chi-square needs at least one degree of freedom");
    if (statistic <= 0.0) return 1.0;
    return boost::math::gamma_q(degrees_of_freedom / 2.0, statistic / 2.0);
}

UniformityReport public_transcript_uniformity(std::uint64_t trials, std::uint64_t seed) {
    if (trials == 0) throw std::invalid_argument("uniformity check needs at least one trial");
    struct Message {
        std::string name;
        unsigned range;
        unsigned (*value)(const Run22&);
    };
    const std::array<Message, 3> messages{{
        {"token-r1", 4, [](const Run22& r) { return r.token_r1.index(); }},
        {"token-r2", 2, [](const Run22& r) { return unsigned(r.token_r2); }},
        {"ss'", 4, [](const Run22& r) { return r.shares.public_ss ? r.shares.public_ss->index() : 0U; }},
    }};

    UniformityReport report;
    report.trials = trials;
    report.seed = seed;
    const auto cases = enumerate_qss22();

    std::vector<std::array<std::vector<std::uint64_t>, 2>> sampled(messages.size());
    for (std::size_t m = 0; m < messages.size(); ++m) {
        sampled[m][0].assign(messages[m].range, 0);
        sampled[m][1].assign(messages[m].range, 0);
    }
    for (std::uint64_t i = 0; i < trials; ++i) {
        SampledOutcomes source{CounterRng(seed, i)};
        const Run22 run = run_with_random_secret(source, {}, {});
        for (std::size_t m = 0; m < messages.size(); ++m) ++sampled[m][run.secret][messages[m].value(run)];
    }

    for (std::size_t m = 0; m < messages.size(); ++m) {
        const auto& msg = messages[m];
        MessageUniformity u;
        u.message = msg.name;

        std::array<std::vector<Rational>, 2> joint{std::vector<Rational>(msg.range), std::vector<Rational>(msg.range)};
        std::array<Rational, 2> secret_marginal{};
        u.distribution.assign(msg.range, Rational{});
        for (const auto& c : cases) {
            const unsigned v = msg.value(c.run);
            joint[c.run.secret][v] += c.weight;
            secret_marginal[c.run.secret] += c.weight;
            u.distribution[v] += c.weight;
        }
        u.exactly_uniform = std::all_of(u.distribution.begin(), u.distribution.end(),
                                        [&](const Rational& p) { return p == Rational(1, msg.range); });
        u.independent_of_secret = true;
        for (int s = 0; s < 2; ++s) {
            for (unsigned v = 0; v < msg.range; ++v) {
                if (joint[s][v] != secret_marginal[s] * u.distribution[v]) u.independent_of_secret = false;
            }
        }

        u.counts.assign(msg.range, 0);
        std::array<std::uint64_t, 2> row_totals{};
        for (int s = 0; s < 2; ++s) {
            for (unsigned v = 0; v < msg.range; ++v) {
                u.counts[v] += sampled[m][s][v];
                row_totals[s] += sampled[m][s][v];
            }
        }
        const double expected = double(trials) / msg.range;
        for (const auto c : u.counts) u.chi_square += (double(c) - expected) * (double(c) - expected) / expected;
        u.p_value = chi_square_p_value(u.chi_square, msg.range - 1);

        for (int s = 0; s < 2; ++s) {
            for (unsigned v = 0; v < msg.range; ++v) {
                const double e = double(row_totals[s]) * double(u.counts[v]) / double(trials);
                if (e > 0) u.independence_chi_square += (double(sampled[m][s][v]) - e) * (double(sampled[m][s][v]) - e) / e;
            }
        }
        u.independence_p_value = chi_square_p_value(u.independence_chi_square, msg.range - 1);
        report.messages.push_back(std::move(u));
    }
    return report;
}

// ---------------------------------------------------------------------------

std::string to_jsonl(const SecrecyReport& r) {
    auto h = report_header("secrecy");
    ordered_json j;
    j["view"] = r.view;
    j["mutual_information"] = r.mutual_information_bits;
    j["exactly_independent"] = r.exactly_independent;
    j["determines_secret"] = r.determines_secret;
    j["guess_success"] = r.guess_success.to_string();
    j["guess_advantage"] = r.guess_advantage.to_string();
    j["cases_enumerated"] = r.cases_enumerated;
    return h.dump() + "\n" + j.dump() + "\n";
}

std::string to_jsonl(const AttackSweepReport& r) {
    auto h = report_header("attack-sweep");
    h["seed"] = r.seed;
    ordered_json j;
    j["attack"] = r.attack.to_string();
    j["trials"] = r.trials;
    j["detected"] = r.detected;
    j["detection_rate"] = r.detection_rate;
    j["ci99"] = {r.ci_low, r.ci_high};
    j["exact_rate"] = r.exact_rate ? ordered_json(r.exact_rate->to_string()) : ordered_json(nullptr);
    j["exact_band99"] = {r.band_low, r.band_high};
    j["consistent_with_exact"] = r.consistent_with_exact;
    return h.dump() + "\n" + j.dump() + "\n";
}

std::string to_jsonl(const UniformityReport& r) {
    auto h = report_header("public-uniformity");
    h["trials"] = r.trials;
    h["seed"] = r.seed;
    std::string out = h.dump() + "\n";
    for (const auto& m : r.messages) {
        ordered_json j;
        j["message"] = m.message;
        j["exact_distribution"] = rationals(m.distribution);
        j["exactly_uniform"] = m.exactly_uniform;
        j["independent_of_secret"] = m.independent_of_secret;
        j["counts"] = m.counts;
        j["chi_square"] = m.chi_square;
        j["p_value"] = m.p_value;
        j["independence_chi_square"] = m.independence_chi_square;
        j["independence_p_value"] = m.independence_p_value;
        out += j.dump() + "\n";
    }
    return out;
}

std::string to_jsonl(const std::vector<MixednessEntry>& r) {
    std::string out = report_header("mixedness-55").dump() + "\n";
    for (const auto& e : r) {
        ordered_json j;
        j["known"] = piece_set_name(e.known);
        j["trace_distance"] = e.trace_distance;
        out += j.dump() + "\n";
    }
    return out;
}

std::string to_text(const SecrecyReport& r) {
    std::ostringstream out;
    out << "view: " << r.view << "\n"
        << "mutual_information: " << r.mutual_information_bits << " bits"
        << (r.exactly_independent ? " (exact: independent)" : "") << "\n"
        << "determines_secret: " << (r.determines_secret ? "yes" : "no") << "\n"
        << "guess_success: " << r.guess_success.to_string() << "\n"
        << "guess_advantage: " << r.guess_advantage.to_string() << "\n"
        << "cases_enumerated: " << r.cases_enumerated << "\n";
    return out.str();
}

std::string to_text(const AttackSweepReport& r) {
    std::ostringstream out;
    out << "attack: " << r.attack.to_string() << "\n"
        << "trials: " << r.trials << " (seed " << r.seed << ")\n"
        << "detected: " << r.detected << "\n"
        << "detection_rate: " << r.detection_rate << "  99% CI [" << r.ci_low << ", " << r.ci_high << "]\n";
    if (r.exact_rate) {
        out << "exact_rate: " << r.exact_rate->to_string() << "  99% band [" << r.band_low << ", " << r.band_high
            << "]\n"
            << "consistent_with_exact: " << (r.consistent_with_exact ? "yes" : "no") << "\n";
    }
    return out.str();
}

std::string to_text(const UniformityReport& r) {
    std::ostringstream out;
    out << "trials: " << r.trials << " (seed " << r.seed << ")\n";
    for (const auto& m : r.messages) {
        out << m.message << ": exact [";
        for (std::size_t i = 0; i < m.distribution.size(); ++i) out << (i ? " " : "") << m.distribution[i].to_string();
        out << "] uniform=" << (m.exactly_uniform ? "yes" : "no")
            << " independent=" << (m.independent_of_secret ? "yes" : "no") << " chi2=" << m.chi_square
            << " p=" << m.p_value << " indep_p=" << m.independence_p_value << "\n";
    }
    return out.str();
}

std::string to_text(const std::vector<MixednessEntry>& r) {
    std::ostringstream out;
    for (const auto& e : r) out << "known " << piece_set_name(e.known) << ": trace distance " << e.trace_distance << "\n";
    return out.str();
}

}  // namespace qss
