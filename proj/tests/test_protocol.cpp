#include <doctest.h>

#include <map>
#include <random>

#include "qss/bell.hpp"
#include "qss/protocol.hpp"
#include "qss/security.hpp"
#include "support.hpp"

using namespace qss;

namespace {

bool never_publishes_ss(const Transcript& t) { return !ss_published(t); }

}  // namespace

TEST_SUITE("protocol") {

TEST_CASE("default public pairs") {
    const Qss22Config config;
    CHECK(config.r1_pair_a == kPhiPlus);
    CHECK(config.r1_pair_b == kPhiMinus);
    CHECK(config.r2_pair_a == kPsiPlus);
    CHECK(config.r2_pair_b == kPsiMinus);
}

TEST_CASE("S infers each receiver's token outcome in every branch") {
    for (unsigned a = 0; a < 4; ++a) {
        for (unsigned b = 0; b < 4; ++b) {
            test::Steer source({a, b});
            EventLog log;
            const auto r = run_auth_tokens({}, source, log);
            CHECK(source.exhausted());
            CHECK(r.r1_receiver == BellLabel::from_index(a));
            CHECK(r.r2_receiver == BellLabel::from_index(b));
            CHECK(r.r1_sender == r.r1_receiver);
            CHECK(r.r2_sender == r.r2_receiver);
        }
    }
}

TEST_CASE("token outcomes are uniform over sampled runs") {
    std::array<int, 4> counts{};
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        SampledOutcomes source{CounterRng(17, std::uint64_t(i))};
        EventLog log;
        ++counts[run_auth_tokens({}, source, log).r1_receiver.index()];
    }
    const double sigma = std::sqrt(n * 0.25 * 0.75);
    for (int c : counts) CHECK(std::abs(c - n / 4.0) <= 3 * sigma);
}

TEST_CASE("forced splitting runs") {
    {
        test::Steer source({0, 0});
        EventLog log;
        const auto r = run_splitting_22(false, kPhiPlus, kPhiPlus, source, log);
        CHECK(r.bsm_r1 == BsmOutcome{});
        CHECK(r.bsm_s == BsmOutcome{});
        CHECK_FALSE(r.xi_prime);
    }
    {
        test::Steer source({as_outcome(kPsiPlus).index(), 3});
        EventLog log;
        const auto r = run_splitting_22(true, kPhiPlus, kPsiMinus, source, log);
        CHECK(r.bsm_r1 == BsmOutcome{false, true});
        CHECK(r.bsm_s == BsmOutcome{true, true});
        CHECK_FALSE(r.xi_prime);
    }
}

TEST_CASE("honest runs reconstruct the secret in all 512 branches, in both measurement orders") {
    for (bool teleport_first : {false, true}) {
        Qss22Config config;
        config.teleport_before_swap = teleport_first;
        const auto cases = enumerate_qss22({}, config);
        CHECK(cases.size() == 512);
        Rational total;
        std::map<std::tuple<bool, unsigned, unsigned, unsigned, unsigned>, int> seen;
        for (const auto& c : cases) {
            total += c.weight;
            CHECK(c.weight == Rational(1, 512));
            CHECK(c.run.accepted());
            REQUIRE(c.run.reconstructed.has_value());
            CHECK(*c.run.reconstructed == c.run.secret);
            CHECK(channel_discipline_holds(c.run.transcript));
            ++seen[{c.run.secret, c.run.tokens.r1_receiver.index(), c.run.tokens.r2_receiver.index(),
                    c.run.split.bsm_r1.index(), c.run.split.bsm_s.index()}];
        }
        CHECK(total == Rational(1));
        CHECK(seen.size() == 512);
    }
}

TEST_CASE("both measurement orders give identical branch statistics") {
    Qss22Config swapped;
    swapped.teleport_before_swap = true;
    std::map<std::tuple<bool, unsigned, unsigned, unsigned, unsigned, bool>, Rational> a, b;
    for (const auto& c : enumerate_qss22({}, {})) {
        a[{c.run.secret, c.run.tokens.r1_receiver.index(), c.run.tokens.r2_receiver.index(),
           c.run.split.bsm_r1.index(), c.run.split.bsm_s.index(), c.run.split.xi_prime}] += c.weight;
    }
    for (const auto& c : enumerate_qss22({}, swapped)) {
        b[{c.run.secret, c.run.tokens.r1_receiver.index(), c.run.tokens.r2_receiver.index(),
           c.run.split.bsm_r1.index(), c.run.split.bsm_s.index(), c.run.split.xi_prime}] += c.weight;
    }
    CHECK(a == b);
}

TEST_CASE("sampled end-to-end runs") {
    const auto zero = run_qss22(false, 1);
    CHECK(zero.accepted());
    CHECK(zero.reconstructed == false);
    CHECK(zero.transcript.reconstructed == "0");
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto one = run_qss22(true, seed);
        CHECK(one.reconstructed == true);
        CHECK(one.transcript.outcome == RunOutcome::reconstructed);
    }
}

TEST_CASE("verify_authentication") {
    const SenderRecords records{true, kPhiPlus, kPsiMinus, BsmOutcome{true, true}};
    const auto r1_token = make_token_r1(kPhiPlus, BsmOutcome{false, true});
    const auto r2_token = make_token_r2(false, kPsiMinus);
    const auto honest = verify_authentication(records, r1_token, r2_token);
    CHECK(honest.accepted);
    CHECK(honest.recovered_bsm_r1 == BsmOutcome{false, true});
    CHECK_FALSE(honest.recovered_xi_prime);

    CHECK_FALSE(verify_authentication(records, r1_token, !r2_token).accepted);
    CHECK_FALSE(verify_authentication(records, r1_token ^ BsmOutcome{false, true}, r2_token).accepted);
    // A phase-bit lie leaves the predicted xi' unchanged.
    CHECK(verify_authentication(records, r1_token ^ BsmOutcome{true, false}, r2_token).accepted);
}

TEST_CASE("rejected runs never publish ss'") {
    for (const char* spec : {"token-flip", "r1-lie:01", "r1-lie:11", "intercept-resend-computational@token-r2"}) {
        const auto attack = AttackModel::parse(spec);
        int rejected = 0;
        for (const auto& c : enumerate_qss22(attack)) {
            CHECK(channel_discipline_holds(c.run.transcript));
            if (c.run.accepted()) continue;
            ++rejected;
            CHECK(never_publishes_ss(c.run.transcript));
            CHECK_FALSE(c.run.shares.public_ss.has_value());
            CHECK_FALSE(c.run.reconstructed.has_value());
            CHECK(c.run.transcript.outcome == RunOutcome::rejected);
            CHECK(c.run.transcript.reconstructed.empty());
            CHECK_THROWS_AS((void)reconstruct22(c.run.shares), IncompleteShares);
        }
        CHECK(rejected > 0);
    }
}

TEST_CASE("reconstruct22 needs every field") {
    ShareSet22 full;
    full.r1_share = {kPhiPlus, BsmOutcome{}};
    full.r2_share = {true, kPhiPlus};
    full.public_ss = BsmOutcome{};
    CHECK(reconstruct22(full));

    auto missing = full;
    missing.r1_share.bsm_r1.reset();
    CHECK_THROWS_AS((void)reconstruct22(missing), IncompleteShares);
    missing = full;
    missing.r2_share.xi_prime.reset();
    CHECK_THROWS_AS((void)reconstruct22(missing), IncompleteShares);
    missing = full;
    missing.public_ss.reset();
    CHECK_THROWS_AS((void)reconstruct22(missing), IncompleteShares);
}

TEST_CASE("transcripts are deterministic per seed and trial") {
    const auto attack = AttackModel::parse("intercept-resend-computational@token-r2");
    for (std::uint64_t seed : {0ULL, 7ULL, 123456789ULL}) {
        CHECK(to_jsonl(run_qss22(true, seed, attack, 3).transcript) ==
              to_jsonl(run_qss22(true, seed, attack, 3).transcript));
        CHECK(to_text(run_qss55({0.6, 0}, {0, 0.8}, seed, 2).transcript) ==
              to_text(run_qss55({0.6, 0}, {0, 0.8}, seed, 2).transcript));
    }
    CHECK(to_jsonl(run_qss22(true, 1, {}, 0).transcript) != to_jsonl(run_qss22(true, 1, {}, 1).transcript));
}

TEST_CASE("transcript serialization") {
    const auto run = run_qss22(true, 7);
    const auto jsonl = to_jsonl(run.transcript);
    CHECK(jsonl.starts_with("{\"schema\":\"qss-transcript/1\",\"scheme\":\"qss22\",\"seed\":7"));
    CHECK(jsonl.find("\"kind\":\"measurement\"") != std::string::npos);
    CHECK(jsonl.find("\"channel\":\"classical-public\"") != std::string::npos);
    const auto text = to_text(run.transcript);
    CHECK(text.find("reconstructed=1") != std::string::npos);
    // Every event carries its position.
    for (std::size_t i = 0; i < run.transcript.events.size(); ++i) CHECK(run.transcript.events[i].index == i);
}

TEST_CASE("channel discipline catches misrouted payloads") {
    auto t = run_qss22(false, 3).transcript;
    CHECK(channel_discipline_holds(t));
    auto bad = t;
    for (auto& e : bad.events) {
        if (e.kind == EventKind::classical) {
            e.payload = "qubit:r2";
            break;
        }
    }
    CHECK_FALSE(channel_discipline_holds(bad));
    bad = t;
    for (auto& e : bad.events) {
        if (e.kind == EventKind::quantum_send) {
            e.channel = ChannelKind::classical_public;
            break;
        }
    }
    CHECK_FALSE(channel_discipline_holds(bad));
    bad = t;
    for (auto& e : bad.events) {
        if (e.kind == EventKind::classical) {
            e.channel = ChannelKind::classical_private;
            break;
        }
    }
    CHECK_FALSE(channel_discipline_holds(bad));
}

TEST_CASE("attack specs parse and print") {
    CHECK(AttackModel::parse("none").kind == AttackKind::none);
    CHECK(AttackModel::parse("token-flip").to_string() == "token-flip");
    CHECK(AttackModel::parse("r1-lie:01").delta == BsmOutcome{false, true});
    CHECK(AttackModel::parse("intercept-resend-computational").target == AttackTarget::split_r2);
    CHECK(AttackModel::parse("intercept-resend-bell").target == AttackTarget::split_r1);
    CHECK(AttackModel::parse("intercept-resend-bell@token-r1").to_string() == "intercept-resend-bell@token-r1");
    CHECK_THROWS_AS((void)AttackModel::parse("intercept-resend-bell@split-r2"), std::invalid_argument);
    CHECK_THROWS_AS((void)AttackModel::parse("photon-number-splitting"), std::invalid_argument);
    CHECK_THROWS_AS((void)AttackModel::parse("intercept-resend-computational@s"), std::invalid_argument);
}

TEST_CASE("qss55 forced identity run leaves |0>") {
    test::Steer source({0, 0, 0, 0});
    const auto run = simulate_qss55(StateVector(1), source);
    REQUIRE(run.shares.qubit.has_value());
    CHECK(fidelity(*run.shares.qubit, StateVector(1)) >= kFidelityThreshold);
    CHECK(fidelity(reconstruct55(run.shares), StateVector(1)) >= kFidelityThreshold);
}

TEST_CASE("qss55 hands each piece to its own agent") {
    const auto run = run_qss55({0.6, 0}, {0, 0.8}, 3);
    const auto& shares = run.transcript.shares;
    REQUIRE(shares.size() == 5);
    CHECK((shares[0].holder == Party::R1 && shares[0].name == "R1R1'"));
    CHECK((shares[1].holder == Party::R2 && shares[1].name == "xi'"));
    CHECK((shares[2].holder == Party::R3 && shares[2].name == "s1s1'"));
    CHECK((shares[3].holder == Party::R4 && shares[3].name == "s2s2'"));
    CHECK((shares[4].holder == Party::R5 && shares[4].name == "ss'"));
    CHECK(channel_discipline_holds(run.transcript));
    int private_messages = 0;
    for (const auto& e : run.transcript.events) {
        if (e.kind == EventKind::classical) {
            CHECK(e.channel == ChannelKind::classical_private);
            ++private_messages;
        }
    }
    CHECK(private_messages == 3);
}

TEST_CASE("qss55 round-trips random qubits in both measurement orders") {
    std::mt19937_64 gen(55);
    for (int i = 0; i < 100; ++i) {
        const auto secret = test::random_qubit(gen);
        const auto run = run_qss55(secret[0], secret[1], 1000 + std::uint64_t(i));
        CHECK(fidelity(reconstruct55(run.shares), secret) >= kFidelityThreshold);

        SampledOutcomes source{CounterRng(2000, std::uint64_t(i))};
        const auto swapped = simulate_qss55(secret, source, true);
        CHECK(fidelity(reconstruct55(swapped.shares), secret) >= kFidelityThreshold);
    }
}

TEST_CASE("qss55 needs all five pieces") {
    const auto run = run_qss55({0.6, 0}, {0, 0.8}, 9);
    for (int drop = 0; drop < 5; ++drop) {
        auto partial = run.shares;
        switch (drop) {
            case 0: partial.bsm_r1.reset(); break;
            case 1: partial.qubit.reset(); break;
            case 2: partial.s1.reset(); break;
            case 3: partial.s2.reset(); break;
            default: partial.bsm_s.reset(); break;
        }
        CHECK_THROWS_AS((void)reconstruct55(partial), IncompleteShares);
    }
    CHECK_THROWS_AS((void)run_qss55({0.6, 0}, {0.6, 0}, 1), std::invalid_argument);
}

TEST_CASE("amplitude formatting") {
    CHECK(format_amplitude({0.6, 0.0}) == "0.6+0i");
    CHECK(format_amplitude({0.0, -0.8}) == "0-0.8i");
    CHECK(format_amplitude({-0.0, -0.0}) == "0+0i");
    CHECK(format_qubit(StateVector(1)) == "1+0i,0+0i");
}

}  // TEST_SUITE
