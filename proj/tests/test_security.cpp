#include <doctest.h>

#include <random>

#include "qss/security.hpp"
#include "support.hpp"

using namespace qss;

TEST_SUITE("security") {

TEST_CASE("view parsing") {
    CHECK(AdversaryView::parse("r1-alone").to_string() == "r1");
    CHECK(AdversaryView::parse("r2-alone").to_string() == "r2");
    CHECK(AdversaryView::parse("public").to_string() == "public");
    CHECK(AdversaryView::parse("all-shares").to_string() == "r1+r2+public");
    CHECK(AdversaryView::parse("public+r2").to_string() == "r2+public");
    CHECK_THROWS_AS((void)AdversaryView::parse("s"), std::invalid_argument);
    CHECK_THROWS_AS((void)AdversaryView::parse("r1+"), std::invalid_argument);
}

TEST_CASE("single-receiver and outsider views learn nothing") {
    for (const char* v : {"r1-alone", "r2-alone", "public", "r1+public"}) {
        CAPTURE(v);
        const auto r = mutual_information_22(AdversaryView::parse(v));
        CHECK(r.cases_enumerated == 512);
        CHECK(r.exactly_independent);
        CHECK(r.mutual_information_bits == 0.0);
        CHECK(r.guess_success == Rational(1, 2));
        CHECK(r.guess_advantage == Rational(0));
    }
}

TEST_CASE("pooled shares determine the secret") {
    const auto r = mutual_information_22(AdversaryView::parse("all-shares"));
    CHECK(r.determines_secret);
    CHECK(r.mutual_information_bits == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.guess_advantage == Rational(1, 2));
}

TEST_CASE("R1's public token completes R2's share") {
    // The token r1^R1 is what R2 lacks: with it, R2 decodes on its own.
    const auto r = mutual_information_22(AdversaryView::parse("r2+public"));
    CHECK(r.determines_secret);
    CHECK(r.mutual_information_bits == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("mixedness of the encrypted qubit") {
    std::mt19937_64 gen(6);
    for (int k = 0; k < 5; ++k) {
        const auto secret = test::random_qubit(gen);
        for (unsigned known = 0; known < 15; ++known) {
            CHECK(encrypted_qubit_mixedness_55(PieceSet(known), secret) <= 1e-12);
        }
        CHECK(encrypted_qubit_mixedness_55(PieceSet(15), secret) == doctest::Approx(0.5).epsilon(1e-12));
    }
    CHECK(piece_set_name(PieceSet(0b1010)) == "{s2s2',ss'}");
}

TEST_CASE("averaged qubit with everything pinned is the encrypted pure state") {
    const auto secret = StateVector::single_qubit({0.6, 0}, {0, 0.8});
    const auto rho = averaged_encrypted_qubit(PieceSet(15), {0, 0, 0, 0}, secret);
    CHECK(rho.purity() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(rho.at(0, 0) - 0.36) <= 1e-12);
}

TEST_CASE("exact detection rates") {
    CHECK(exact_detection_rate({}) == Rational(0));
    CHECK(exact_detection_rate(AttackModel::parse("token-flip")) == Rational(1));
    CHECK(exact_detection_rate(AttackModel::parse("r1-lie:01")) == Rational(1));
    CHECK(exact_detection_rate(AttackModel::parse("r1-lie:11")) == Rational(1));
    CHECK(exact_detection_rate(AttackModel::parse("r1-lie:10")) == Rational(0));
    CHECK(exact_detection_rate(AttackModel::parse("intercept-resend-computational")) == Rational(0));
    CHECK(exact_detection_rate(AttackModel::parse("intercept-resend-computational@split-r1")) == Rational(0));
    CHECK(exact_detection_rate(AttackModel::parse("intercept-resend-computational@token-r1")) == Rational(0));
    CHECK(exact_detection_rate(AttackModel::parse("intercept-resend-computational@token-r2")) == Rational(1, 2));
    CHECK(exact_detection_rate(AttackModel::parse("intercept-resend-bell")) == Rational(0));
}

TEST_CASE("sampled sweeps agree with the enumeration") {
    const auto flip = attack_sweep(AttackModel::parse("token-flip"), 500, 1);
    CHECK(flip.detected == 500);
    CHECK(flip.consistent_with_exact);
    const auto honest = attack_sweep({}, 500, 1);
    CHECK(honest.detected == 0);
    CHECK(flip.detection_rate >= honest.detection_rate);

    const auto half = attack_sweep(AttackModel::parse("intercept-resend-computational@token-r2"), 4000, 12);
    REQUIRE(half.exact_rate.has_value());
    CHECK(*half.exact_rate == Rational(1, 2));
    CHECK(half.consistent_with_exact);
    CHECK(half.ci_low < 0.5);
    CHECK(half.ci_high > 0.5);
    CHECK_THROWS_AS((void)attack_sweep({}, 0, 1), std::invalid_argument);
}

TEST_CASE("sweeps are reproducible") {
    const auto attack = AttackModel::parse("intercept-resend-computational@token-r2");
    CHECK(to_jsonl(attack_sweep(attack, 1000, 5)) == to_jsonl(attack_sweep(attack, 1000, 5)));
}

TEST_CASE("public messages are exactly uniform and independent of the secret") {
    const auto report = public_transcript_uniformity(4000, 21);
    REQUIRE(report.messages.size() == 3);
    for (const auto& m : report.messages) {
        CAPTURE(m.message);
        CHECK(m.exactly_uniform);
        CHECK(m.independent_of_secret);
        CHECK(m.p_value > 0.001);
        CHECK(m.independence_p_value > 0.001);
    }
    CHECK(report.messages[0].distribution.size() == 4);
    CHECK(report.messages[1].distribution.size() == 2);
}

TEST_CASE("chi-square tail") {
    CHECK(chi_square_p_value(3.841458820694124, 1) == doctest::Approx(0.05).epsilon(1e-9));
    CHECK(chi_square_p_value(7.814727903251178, 3) == doctest::Approx(0.05).epsilon(1e-9));
    CHECK(chi_square_p_value(0.0, 3) == 1.0);
    CHECK_THROWS_AS((void)chi_square_p_value(1.0, 0), std::invalid_argument);
}

TEST_CASE("report serialization") {
    const auto jsonl = to_jsonl(mutual_information_22(AdversaryView::parse("r1-alone")));
    CHECK(jsonl.starts_with("{\"schema\":\"qss-report/1\",\"kind\":\"secrecy\"}"));
    CHECK(jsonl.find("\"mutual_information\":0.0") != std::string::npos);
    CHECK(to_text(attack_sweep(AttackModel::parse("token-flip"), 10, 0)).find("exact_rate: 1") != std::string::npos);
}

TEST_CASE("rational arithmetic") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(1, 4) + Rational(1, 4) == Rational(1, 2));
    CHECK(Rational(1, 2) * Rational(2, 3) == Rational(1, 3));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational::from_dyadic(0.375) == Rational(3, 8));
    CHECK_THROWS_AS((void)Rational::from_dyadic(1.0 / 3.0), std::domain_error);
    CHECK(Rational(-3, 6).to_string() == "-1/2");
}

}  // TEST_SUITE
