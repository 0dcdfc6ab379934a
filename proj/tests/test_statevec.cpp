#include <doctest.h>

#include <cmath>
#include <random>

#include "qss/statevec.hpp"
#include "support.hpp"

using namespace qss;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

bool close(Amplitude a, Amplitude b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

bool is_half_identity(const DensityMatrix& rho) {
    return rho.dim() == 2 && close(rho.at(0, 0), 0.5) && close(rho.at(1, 1), 0.5) && close(rho.at(0, 1), 0.0) &&
           close(rho.at(1, 0), 0.0);
}

StateVector plus() { return StateVector::single_qubit(kInvSqrt2, kInvSqrt2); }

}  // namespace

TEST_SUITE("statevec") {

TEST_CASE("Bell states have the textbook amplitudes") {
    const auto phi_plus = prepare_bell(kPhiPlus);
    CHECK(close(phi_plus[0], kInvSqrt2));
    CHECK(close(phi_plus[1], 0.0));
    CHECK(close(phi_plus[2], 0.0));
    CHECK(close(phi_plus[3], kInvSqrt2));

    const auto psi_minus = prepare_bell(kPsiMinus);
    CHECK(close(psi_minus[0], 0.0));
    CHECK(close(psi_minus[1], kInvSqrt2));
    CHECK(close(psi_minus[2], -kInvSqrt2));
    CHECK(close(psi_minus[3], 0.0));

    const auto psi_plus = prepare_bell(kPsiPlus);
    CHECK(close(psi_plus[1], kInvSqrt2));
    CHECK(close(psi_plus[2], kInvSqrt2));
    const auto phi_minus = prepare_bell(kPhiMinus);
    CHECK(close(phi_minus[0], kInvSqrt2));
    CHECK(close(phi_minus[3], -kInvSqrt2));

    for (auto label : kAllBellLabels) CHECK(std::abs(prepare_bell(label).norm_squared() - 1.0) <= 1e-15);
}

TEST_CASE("the four Bell states are orthonormal") {
    for (auto a : kAllBellLabels) {
        for (auto b : kAllBellLabels) {
            CHECK(fidelity(prepare_bell(a), prepare_bell(b)) == doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("apply_pauli") {
    std::mt19937_64 gen(11);
    const auto psi = test::random_state(2, gen);
    const auto same = apply_pauli(psi, QubitId{1}, kIdentity);
    for (std::size_t i = 0; i < psi.dimension(); ++i) CHECK(same[i] == psi[i]);

    const auto one = apply_pauli(StateVector(1), QubitId{0}, kPauliX);
    CHECK(close(one[0], 0.0));
    CHECK(close(one[1], 1.0));

    const auto minus = apply_pauli(plus(), QubitId{0}, kPauliZ);
    CHECK(close(minus[0], kInvSqrt2));
    CHECK(close(minus[1], -kInvSqrt2));

    // Z X |0> = Z |1> = -|1>: the X factor acts first.
    const auto zx = apply_pauli(StateVector(1), QubitId{0}, kPauliZX);
    CHECK(close(zx[1], -1.0));

    CHECK_THROWS_AS((void)apply_pauli(StateVector(1), QubitId{1}, kPauliX), std::out_of_range);
}

TEST_CASE("construction rejects bad amplitudes") {
    CHECK_THROWS_AS(StateVector::from_amplitudes({1.0, 0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(StateVector::from_amplitudes({0.9, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(StateVector::from_amplitudes({std::nan(""), 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(StateVector::from_amplitudes(std::vector<Amplitude>(128, 0.0)), std::invalid_argument);
    CHECK_THROWS_AS(StateVector(7), std::invalid_argument);
    CHECK_NOTHROW(StateVector(6));
}

TEST_CASE("bell_measure on a fresh pair and on |00>") {
    for (std::uint64_t s = 0; s < 64; ++s) {
        CounterRng rng(s, 0);
        CHECK(bell_measure(prepare_bell(kPhiPlus), QubitId{0}, QubitId{1}, rng).outcome == BsmOutcome{});
    }
    const auto p = bell_probabilities(StateVector(2), QubitId{0}, QubitId{1});
    CHECK(p[as_outcome(kPhiPlus).index()] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p[as_outcome(kPhiMinus).index()] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p[as_outcome(kPsiPlus).index()] <= 1e-15);
    CHECK(p[as_outcome(kPsiMinus).index()] <= 1e-15);

    for (std::uint64_t s = 0; s < 200; ++s) {
        CounterRng rng(s, 1);
        const auto label = as_label(bell_measure(StateVector(2), QubitId{0}, QubitId{1}, rng).outcome);
        CHECK((label == kPhiPlus || label == kPhiMinus));
    }
    CounterRng rng(0, 0);
    CHECK_THROWS_AS((void)bell_measure(StateVector(2), QubitId{1}, QubitId{1}, rng), std::invalid_argument);
}

TEST_CASE("cross halves of Phi+ (x) Psi- give four equally likely outcomes") {
    const auto state = tensor(prepare_bell(kPhiPlus), prepare_bell(kPsiMinus));
    const auto p = bell_probabilities(state, QubitId{1}, QubitId{2});
    for (double v : p) CHECK(v == doctest::Approx(0.25).epsilon(1e-12));
    // Each outcome leaves the outer qubits in a Bell state.
    for (unsigned o = 0; o < 4; ++o) {
        const auto post = project_bell(state, QubitId{1}, QubitId{2}, BsmOutcome::from_index(o));
        CHECK(reduced_density(post, {QubitId{0}, QubitId{3}}).purity() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(is_half_identity(reduced_density(post, {QubitId{0}})));
    }
}

TEST_CASE("measure_computational") {
    for (std::uint64_t s = 0; s < 32; ++s) {
        CounterRng rng(s, 0);
        CHECK(measure_computational(StateVector(1).x(QubitId{0}), QubitId{0}, rng).bit);
    }
    int ones = 0;
    for (std::uint64_t s = 0; s < 4000; ++s) {
        CounterRng rng(s, 3);
        const auto m = measure_computational(plus(), QubitId{0}, rng);
        ones += m.bit;
        CHECK(close(m.state[m.bit ? 1 : 0], 1.0));
    }
    // 4 sigma band around 2000.
    CHECK(std::abs(ones - 2000) <= 127);
    CounterRng rng(0, 0);
    CHECK_THROWS_AS((void)measure_computational(StateVector(1), QubitId{2}, rng), std::out_of_range);
}

TEST_CASE("reduced_density") {
    for (auto label : kAllBellLabels) {
        const auto pair = prepare_bell(label);
        CHECK(is_half_identity(reduced_density(pair, {QubitId{0}})));
        CHECK(is_half_identity(reduced_density(pair, {QubitId{1}})));
    }
    std::mt19937_64 gen(5);
    const auto product = tensor(StateVector(1), test::random_qubit(gen));
    const auto rho = reduced_density(product, {QubitId{0}});
    CHECK(close(rho.at(0, 0), 1.0));
    CHECK(close(rho.at(1, 1), 0.0));
    CHECK(close(rho.at(0, 1), 0.0));

    CHECK_THROWS_AS((void)reduced_density(product, std::span<const QubitId>{}), std::invalid_argument);
    CHECK_THROWS_AS((void)reduced_density(product, {QubitId{0}, QubitId{0}}), std::invalid_argument);
    CHECK_THROWS_AS((void)reduced_density(product, {QubitId{4}}), std::out_of_range);
}

TEST_CASE("reduced_density keeps qubits in register order") {
    // |0> (x) |1> (x) |+>: keeping {2, 0} still orders the result as (0, 2).
    const auto state = tensor(tensor(StateVector(1), StateVector(1).x(QubitId{0})), plus());
    const auto rho = reduced_density(state, {QubitId{2}, QubitId{0}});
    CHECK(rho.dim() == 4);
    CHECK(close(rho.at(0, 0), 0.5));
    CHECK(close(rho.at(1, 1), 0.5));
    CHECK(close(rho.at(0, 1), 0.5));
    CHECK(close(rho.at(2, 2), 0.0));
}

TEST_CASE("fidelity") {
    std::mt19937_64 gen(9);
    const auto psi = test::random_state(3, gen);
    CHECK(fidelity(psi, psi) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fidelity(StateVector(1), StateVector(1).x(QubitId{0})) == doctest::Approx(0.0));
    CHECK(fidelity(StateVector(1), plus()) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS((void)fidelity(StateVector(1), StateVector(2)), std::invalid_argument);
    // Global phase is invisible.
    const auto rotated = StateVector::single_qubit(Amplitude(0, 1) * kInvSqrt2, Amplitude(0, 1) * kInvSqrt2);
    CHECK(same_up_to_phase(plus(), rotated));
}

TEST_CASE("gates preserve the norm on random states") {
    std::mt19937_64 gen(2024);
    std::uniform_int_distribution<int> gate(0, 4);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + trial % 6;
        std::uniform_int_distribution<std::size_t> qubit(0, n - 1);
        auto psi = test::random_state(n, gen);
        for (int step = 0; step < 30; ++step) {
            const QubitId a{qubit(gen)};
            QubitId b{qubit(gen)};
            switch (gate(gen)) {
                case 0: psi.x(a); break;
                case 1: psi.z(a); break;
                case 2: psi.h(a); break;
                case 3:
                    if (n > 1) {
                        while (b == a) b = QubitId{qubit(gen)};
                        psi.cnot(a, b);
                    }
                    break;
                default: psi.pauli(a, PauliCorrection::from_index(unsigned(step % 4))); break;
            }
            REQUIRE(std::abs(psi.norm_squared() - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("Bell outcome probabilities are complete and collapse is idempotent") {
    std::mt19937_64 gen(77);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + trial % 5;
        const auto psi = test::random_state(n, gen);
        const QubitId q1{std::size_t(trial) % n};
        const QubitId q2{(std::size_t(trial) + 1) % n};
        const auto p = bell_probabilities(psi, q1, q2);
        CHECK(p[0] + p[1] + p[2] + p[3] == doctest::Approx(1.0).epsilon(1e-12));

        CounterRng rng(std::uint64_t(trial), 0);
        const auto first = bell_measure(psi, q1, q2, rng);
        const auto again = bell_probabilities(first.state, q1, q2);
        CHECK(again[first.outcome.index()] == doctest::Approx(1.0).epsilon(1e-12));
        // The measured pair is left in the reported Bell state.
        CHECK(reduced_density(first.state, {q1, q2}).purity() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("Bell basis change is unitary") {
    std::mt19937_64 gen(3);
    for (int trial = 0; trial < 50; ++trial) {
        const auto psi = test::random_state(4, gen);
        auto copy = psi;
        copy.bell_to_computational(QubitId{1}, QubitId{3}).computational_to_bell(QubitId{1}, QubitId{3});
        for (std::size_t i = 0; i < psi.dimension(); ++i) CHECK(close(copy[i], psi[i]));
    }
    // The rotation sends Bell(z, x) to |z x>.
    for (auto label : kAllBellLabels) {
        auto s = prepare_bell(label);
        s.bell_to_computational(QubitId{0}, QubitId{1});
        CHECK(std::abs(s[label.index()]) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("density matrix invariants on random mixtures") {
    std::mt19937_64 gen(41);
    for (int trial = 0; trial < 40; ++trial) {
        const auto psi = test::random_state(4, gen);
        const auto rho = reduced_density(psi, {QubitId{0}, QubitId{2}});
        CHECK(rho.is_hermitian());
        CHECK(std::abs(rho.trace() - Amplitude(1.0)) <= 1e-12);
        for (double e : rho.eigenvalues()) CHECK(e >= -1e-10);
        CHECK(rho.purity() <= 1.0 + 1e-12);
    }
    CHECK(trace_distance(DensityMatrix::pure(StateVector(1)), DensityMatrix::maximally_mixed(2)) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(trace_distance(DensityMatrix::pure(StateVector(1)), DensityMatrix::pure(StateVector(1).x(QubitId{0}))) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("factor_out_qubit") {
    std::mt19937_64 gen(8);
    const auto q = test::random_qubit(gen);
    const auto state = tensor(tensor(prepare_bell(kPsiMinus), q), StateVector(1));
    CHECK(same_up_to_phase(factor_out_qubit(state, QubitId{2}), q));
    CHECK_THROWS_AS((void)factor_out_qubit(state, QubitId{0}), std::domain_error);
}

TEST_CASE("project refuses impossible outcomes") {
    auto zero = StateVector(1);
    CHECK_THROWS_AS(zero.project(QubitId{0}, true), std::domain_error);
    CHECK_THROWS_AS((void)project_bell(StateVector(2), QubitId{0}, QubitId{1}, as_outcome(kPsiPlus)), std::domain_error);
}

TEST_CASE("bell_pair requires fresh qubits") {
    StateVector reg(3);
    reg.h(QubitId{0});
    CHECK_THROWS_AS(reg.bell_pair(QubitId{0}, QubitId{1}, kPhiPlus), std::logic_error);
    StateVector fresh(3);
    fresh.bell_pair(QubitId{2}, QubitId{0}, kPsiMinus);
    CHECK(reduced_density(fresh, {QubitId{0}, QubitId{2}}).purity() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sample_index never picks negligible entries") {
    const std::array<double, 4> p{0.5, 1e-16, 0.5, 0.0};
    for (double u : {0.0, 0.25, 0.4999999999, 0.5, 0.75, 0.999999999}) {
        const auto i = sample_index(p, u);
        CHECK((i == 0 || i == 2));
    }
}

TEST_CASE("counter RNG streams are reproducible") {
    CounterRng a(5, 9), b(5, 9), c(5, 10);
    bool differs = false;
    for (int i = 0; i < 16; ++i) {
        const auto x = a();
        CHECK(x == b());
        differs |= x != c();
    }
    CHECK(differs);
    CounterRng u(1, 1);
    for (int i = 0; i < 1000; ++i) {
        const double v = u.uniform();
        CHECK((v >= 0.0 && v < 1.0));
    }
}

}  // TEST_SUITE
