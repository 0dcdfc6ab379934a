#include "qss/protocol.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <tuple>
#include <vector>

#include "qss/bell.hpp"

namespace qss {

namespace {

constexpr std::array<double, 4> kUniform4{0.25, 0.25, 0.25, 0.25};

// The shared physical register. Qubits move between parties only through
// send(); a party may only measure qubits it currently holds. Eve acts on
// qubits in flight and is exempt from the ownership check.
class Lab {
public:
    Lab(StateVector state, std::vector<std::string> names, Party initial_owner, EventLog& log)
        : state_(std::move(state)), names_(std::move(names)), owners_(names_.size(), initial_owner), log_(log) {}

    void prepare_bell(Party who, std::size_t first, std::size_t second, BellLabel label) {
        require(who, first);
        require(who, second);
        state_.bell_pair(QubitId{first}, QubitId{second}, label);
    }

    void send(std::size_t q, Party to) {
        log_.quantum_send(owners_.at(q), to, names_.at(q));
        owners_[q] = to;
    }

    BsmOutcome bell_measure(Party who, std::size_t q1, std::size_t q2, OutcomeSource& source) {
        require(who, q1);
        require(who, q2);
        const auto probs = bell_probabilities(state_, QubitId{q1}, QubitId{q2});
        const auto outcome = BsmOutcome::from_index(unsigned(source.pick(probs)));
        state_ = project_bell(std::move(state_), QubitId{q1}, QubitId{q2}, outcome);
        log_.measurement(who, Basis::bell, names_[q1] + "," + names_[q2], bits(outcome));
        return outcome;
    }

    bool measure_z(Party who, std::size_t q, OutcomeSource& source) {
        require(who, q);
        const std::array<double, 2> probs{state_.probability(QubitId{q}, false), state_.probability(QubitId{q}, true)};
        const bool bit = source.pick(probs) == 1;
        state_.project(QubitId{q}, bit);
        log_.measurement(who, Basis::computational, names_[q], bit ? "1" : "0");
        return bit;
    }

    [[nodiscard]] const StateVector& state() const { return state_; }

private:
    void require(Party who, std::size_t q) const {
        if (who != Party::Eve && owners_.at(q) != who) {
            throw std::logic_error(std::string(to_string(who)) + " does not hold qubit " + names_.at(q));
        }
    }

    StateVector state_;
    std::vector<std::string> names_;
    std::vector<Party> owners_;
    EventLog& log_;
};

bool hits(const AttackModel& attack, AttackTarget target) {
    return (attack.kind == AttackKind::intercept_resend_computational ||
            attack.kind == AttackKind::intercept_resend_bell) &&
           attack.target == target;
}

// One receiver's share of the token phase: qubits (a, a', b', b) with a and b
// kept by S, a' and b' sent to the receiver.
std::pair<BellLabel, BellLabel> token_exchange(Party receiver, BellLabel pair_a, BellLabel pair_b,
                                               AttackTarget target, const AttackModel& attack,
                                               OutcomeSource& source, EventLog& log) {
    const std::string tag = receiver == Party::R1 ? "1" : "2";
    Lab lab(StateVector(4), {"a" + tag, "a" + tag + "'", "b" + tag + "'", "b" + tag}, Party::S, log);
    lab.prepare_bell(Party::S, 0, 1, pair_a);
    lab.prepare_bell(Party::S, 2, 3, pair_b);
    lab.send(1, receiver);
    if (hits(attack, target) && attack.kind == AttackKind::intercept_resend_computational) {
        lab.measure_z(Party::Eve, 1, source);
    }
    lab.send(2, receiver);
    if (hits(attack, target) && attack.kind == AttackKind::intercept_resend_bell) {
        lab.bell_measure(Party::Eve, 1, 2, source);
    }

    const BellLabel measured = as_label(lab.bell_measure(receiver, 1, 2, source));
    const BsmOutcome own = lab.bell_measure(Party::S, 0, 3, source);
    const BellLabel inferred = as_label(infer_remote_bsm(pair_a, pair_b, own));
    return {measured, inferred};
}

struct SplitCircuit {
    BsmOutcome bsm_r1;
    BsmOutcome bsm_s;
};

// Qubits: 0 secret | 1 x (S) | 2 x' (R1) | 3 y' (R1) | 4 y (R2), where
// Bell(first) sits on (1,2) and Bell(second) on (4,3).
template <class BeforeMeasure>
SplitCircuit splitting_circuit(Lab& lab, BellLabel first, BellLabel second, OutcomeSource& source,
                               const AttackModel& attack, bool teleport_before_swap, BeforeMeasure&& between_sends) {
    lab.prepare_bell(Party::S, 1, 2, first);
    lab.prepare_bell(Party::S, 4, 3, second);

    lab.send(2, Party::R1);
    if (hits(attack, AttackTarget::split_r1) && attack.kind == AttackKind::intercept_resend_computational) {
        lab.measure_z(Party::Eve, 2, source);
    }
    lab.send(3, Party::R1);
    if (hits(attack, AttackTarget::split_r1) && attack.kind == AttackKind::intercept_resend_bell) {
        lab.bell_measure(Party::Eve, 2, 3, source);
    }
    lab.send(4, Party::R2);
    if (hits(attack, AttackTarget::split_r2) && attack.kind == AttackKind::intercept_resend_computational) {
        lab.measure_z(Party::Eve, 4, source);
    }
    between_sends();

    SplitCircuit out{};
    if (teleport_before_swap) {
        out.bsm_s = lab.bell_measure(Party::S, 0, 1, source);
        out.bsm_r1 = lab.bell_measure(Party::R1, 2, 3, source);
    } else {
        out.bsm_r1 = lab.bell_measure(Party::R1, 2, 3, source);
        out.bsm_s = lab.bell_measure(Party::S, 0, 1, source);
    }
    return out;
}

std::string bit_string(bool b) { return b ? "1" : "0"; }

}  // namespace

// ---------------------------------------------------------------------------

AttackModel AttackModel::parse(std::string_view spec) {
    AttackModel m;
    if (spec.empty() || spec == "none") return m;
    if (spec == "token-flip") {
        m.kind = AttackKind::token_flip;
        return m;
    }
    if (spec.starts_with("r1-lie:")) {
        m.kind = AttackKind::r1_lie;
        m.delta = parse_bsm_outcome(spec.substr(7));
        return m;
    }

    std::string_view head = spec;
    std::string_view target;
    if (const auto at = spec.find('@'); at != std::string_view::npos) {
        head = spec.substr(0, at);
        target = spec.substr(at + 1);
    }
    if (head == "intercept-resend-computational") {
        m.kind = AttackKind::intercept_resend_computational;
        m.target = AttackTarget::split_r2;
    } else if (head == "intercept-resend-bell") {
        m.kind = AttackKind::intercept_resend_bell;
        m.target = AttackTarget::split_r1;
    } else {
        throw std::invalid_argument("unknown attack '" + std::string(spec) + "'");
    }
    if (!target.empty()) {
        if (target == "token-r1") {
            m.target = AttackTarget::token_r1;
        } else if (target == "token-r2") {
            m.target = AttackTarget::token_r2;
        } else if (target == "split-r1") {
            m.target = AttackTarget::split_r1;
        } else if (target == "split-r2") {
            m.target = AttackTarget::split_r2;
        } else {
            throw std::invalid_argument("unknown attack target '" + std::string(target) + "'");
        }
    }
    if (m.kind == AttackKind::intercept_resend_bell && m.target == AttackTarget::split_r2) {
        throw std::invalid_argument("a Bell-basis intercept needs two qubits in flight; split-r2 carries one");
    }
    return m;
}

std::string AttackModel::to_string() const {
    static constexpr std::string_view targets[] = {"token-r1", "token-r2", "split-r1", "split-r2"};
    switch (kind) {
        case AttackKind::none: return "none";
        case AttackKind::token_flip: return "token-flip";
        case AttackKind::r1_lie: return "r1-lie:" + bits(delta);
        case AttackKind::intercept_resend_computational:
            return "intercept-resend-computational@" + std::string(targets[int(target)]);
        case AttackKind::intercept_resend_bell:
            return "intercept-resend-bell@" + std::string(targets[int(target)]);
    }
    return "none";
}

TokenPhaseResult run_auth_tokens(const Qss22Config& config, OutcomeSource& source, EventLog& log,
                                 const AttackModel& attack) {
    log.phase(Phase::auth_tokens);
    TokenPhaseResult r{};
    std::tie(r.r1_receiver, r.r1_sender) =
        token_exchange(Party::R1, config.r1_pair_a, config.r1_pair_b, AttackTarget::token_r1, attack, source, log);
    std::tie(r.r2_receiver, r.r2_sender) =
        token_exchange(Party::R2, config.r2_pair_a, config.r2_pair_b, AttackTarget::token_r2, attack, source, log);
    return r;
}

SplitResult22 run_splitting_22(bool secret, BellLabel r1, BellLabel r2, OutcomeSource& source, EventLog& log,
                               const AttackModel& attack, bool teleport_before_swap) {
    log.phase(Phase::splitting);
    StateVector reg(5);
    if (secret) reg.x(QubitId{0});
    Lab lab(std::move(reg), {"xi", "r1", "r1'", "r2'", "r2"}, Party::S, log);
    const auto circuit = splitting_circuit(lab, r1, r2, source, attack, teleport_before_swap, [] {});
    SplitResult22 out;
    out.bsm_r1 = circuit.bsm_r1;
    out.bsm_s = circuit.bsm_s;
    out.xi_prime = lab.measure_z(Party::R2, 4, source);
    return out;
}

AuthDecision verify_authentication(const SenderRecords& records, BsmOutcome token_r1, bool token_r2) {
    AuthDecision d;
    d.recovered_bsm_r1 = token_r1 ^ as_outcome(records.r1);
    d.recovered_xi_prime = token_r2 != (records.r2.z != records.r2.x);
    const auto corr = end_to_end_correction(records.r1, records.r2, d.recovered_bsm_r1, records.bsm_s);
    d.predicted_xi_prime = records.secret != corr.x_exp;
    d.accepted = d.recovered_xi_prime == d.predicted_xi_prime;
    return d;
}

bool reconstruct22(const ShareSet22& shares) {
    if (!shares.r1_share.r1 || !shares.r1_share.bsm_r1) throw IncompleteShares("R1's share is incomplete");
    if (!shares.r2_share.xi_prime || !shares.r2_share.r2) throw IncompleteShares("R2's share is incomplete");
    if (!shares.public_ss) throw IncompleteShares("ss' was never published");
    const auto corr =
        end_to_end_correction(*shares.r1_share.r1, *shares.r2_share.r2, *shares.r1_share.bsm_r1, *shares.public_ss);
    return decode_classical(*shares.r2_share.xi_prime, corr);
}

Run22 simulate_qss22(bool secret, OutcomeSource& source, const AttackModel& attack, const Qss22Config& config) {
    Run22 run;
    run.secret = secret;
    run.attack = attack;
    EventLog log;

    run.tokens = run_auth_tokens(config, source, log, attack);
    run.split = run_splitting_22(secret, run.tokens.r1_sender, run.tokens.r2_sender, source, log, attack,
                                 config.teleport_before_swap);

    // Receivers work from their own token-phase results.
    log.phase(Phase::authentication);
    run.token_r1 = make_token_r1(run.tokens.r1_receiver, run.split.bsm_r1);
    if (attack.kind == AttackKind::r1_lie) run.token_r1 = run.token_r1 ^ attack.delta;
    log.classical(Party::R1, Party::S, ChannelKind::classical_public, bits(run.token_r1));
    run.token_r2 = make_token_r2(run.split.xi_prime, run.tokens.r2_receiver);
    if (attack.kind == AttackKind::token_flip) run.token_r2 = !run.token_r2;
    log.classical(Party::R2, Party::S, ChannelKind::classical_public, bit_string(run.token_r2));

    const SenderRecords records{secret, run.tokens.r1_sender, run.tokens.r2_sender, run.split.bsm_s};
    run.auth = verify_authentication(records, run.token_r1, run.token_r2);

    run.shares.r1_share = {run.tokens.r1_receiver, run.split.bsm_r1};
    run.shares.r2_share = {run.split.xi_prime, run.tokens.r2_receiver};
    if (run.auth.accepted) {
        log.phase(Phase::combining);
        log.classical(Party::S, Party::R1, ChannelKind::classical_public, bits(run.split.bsm_s));
        log.classical(Party::S, Party::R2, ChannelKind::classical_public, bits(run.split.bsm_s));
        run.shares.public_ss = run.split.bsm_s;
        run.reconstructed = reconstruct22(run.shares);
    }

    auto& t = run.transcript;
    t.scheme = Scheme::qss22;
    t.secret = bit_string(secret);
    t.attack = attack.to_string();
    t.events = log.take();
    t.shares = {
        {Party::R1, "r1r1'", bits(run.tokens.r1_receiver)},
        {Party::R1, "R1R1'", bits(run.split.bsm_r1)},
        {Party::R2, "xi'", bit_string(run.split.xi_prime)},
        {Party::R2, "r2r2'", bits(run.tokens.r2_receiver)},
    };
    if (run.shares.public_ss) t.shares.push_back({Party::S, "ss'", bits(*run.shares.public_ss)});
    t.outcome = run.accepted() ? RunOutcome::reconstructed : RunOutcome::rejected;
    t.reconstructed = run.reconstructed ? bit_string(*run.reconstructed) : std::string{};
    return run;
}

Run22 run_qss22(bool secret, std::uint64_t seed, const AttackModel& attack, std::uint64_t trial,
                const Qss22Config& config) {
    SampledOutcomes source{CounterRng(seed, trial)};
    Run22 run = simulate_qss22(secret, source, attack, config);
    run.transcript.seed = seed;
    run.transcript.trial = trial;
    return run;
}

// ---------------------------------------------------------------------------

Run55 simulate_qss55(const StateVector& secret, OutcomeSource& source, bool teleport_before_swap) {
    if (secret.qubits() != 1) throw std::invalid_argument("the (5,5) secret is a single qubit");
    Run55 run;
    EventLog log;
    log.phase(Phase::splitting);

    const BellLabel s1 = BellLabel::from_index(unsigned(source.pick(kUniform4)));
    const BellLabel s2 = BellLabel::from_index(unsigned(source.pick(kUniform4)));

    Lab lab(tensor(secret, StateVector(4)), {"xi", "s1", "s1'", "s2'", "s2"}, Party::S, log);
    const auto circuit = splitting_circuit(lab, s1, s2, source, AttackModel{}, teleport_before_swap, [&] {
        log.classical(Party::S, Party::R3, ChannelKind::classical_private, bits(s1));
        log.classical(Party::S, Party::R4, ChannelKind::classical_private, bits(s2));
    });
    log.classical(Party::S, Party::R5, ChannelKind::classical_private, bits(circuit.bsm_s));

    run.shares.bsm_r1 = circuit.bsm_r1;
    run.shares.qubit = factor_out_qubit(lab.state(), QubitId{4});
    run.shares.s1 = s1;
    run.shares.s2 = s2;
    run.shares.bsm_s = circuit.bsm_s;

    log.phase(Phase::decoding);
    const StateVector recovered = reconstruct55(run.shares);

    auto& t = run.transcript;
    t.scheme = Scheme::qss55;
    t.secret = format_qubit(secret);
    t.attack = "none";
    t.events = log.take();
    t.shares = {
        {Party::R1, "R1R1'", bits(circuit.bsm_r1)},
        {Party::R2, "xi'", format_qubit(*run.shares.qubit)},
        {Party::R3, "s1s1'", bits(s1)},
        {Party::R4, "s2s2'", bits(s2)},
        {Party::R5, "ss'", bits(circuit.bsm_s)},
    };
    t.outcome = RunOutcome::reconstructed;
    t.reconstructed = format_qubit(recovered);
    return run;
}

Run55 run_qss55(Amplitude r, Amplitude s, std::uint64_t seed, std::uint64_t trial) {
    const StateVector secret = StateVector::single_qubit(r, s);
    SampledOutcomes source{CounterRng(seed, trial)};
    Run55 run = simulate_qss55(secret, source);
    run.transcript.seed = seed;
    run.transcript.trial = trial;
    return run;
}

StateVector reconstruct55(const ShareSet55& shares) {
    if (!shares.bsm_r1) throw IncompleteShares("R1R1' (R1) is missing");
    if (!shares.qubit) throw IncompleteShares("the encrypted qubit (R2) is missing");
    if (!shares.s1) throw IncompleteShares("s1s1' (R3) is missing");
    if (!shares.s2) throw IncompleteShares("s2s2' (R4) is missing");
    if (!shares.bsm_s) throw IncompleteShares("ss' (R5) is missing");
    const auto corr = end_to_end_correction(*shares.s1, *shares.s2, *shares.bsm_r1, *shares.bsm_s);
    StateVector out = *shares.qubit;
    // Exact inverse of Z^z X^x.
    if (corr.z_exp) out.z(QubitId{0});
    if (corr.x_exp) out.x(QubitId{0});
    return out;
}

std::string format_amplitude(Amplitude a) {
    auto shortest = [](double v) {
        char buf[32];
        if (v == 0.0) v = 0.0;  // drop negative zero
        const auto res = std::to_chars(buf, buf + sizeof buf, v);
        return std::string(buf, res.ptr);
    };
    const double im = a.imag();
    return shortest(a.real()) + (std::signbit(im) && im != 0.0 ? "-" : "+") + shortest(std::abs(im)) + "i";
}

std::string format_qubit(const StateVector& q) {
    return format_amplitude(q[0]) + "," + format_amplitude(q[1]);
}

}  // namespace qss
