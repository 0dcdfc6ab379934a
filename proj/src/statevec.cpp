#include "qss/statevec.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qss {

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

std::size_t log2_exact(std::size_t n) {
    std::size_t k = 0;
    while ((std::size_t{1} << k) < n) ++k;
    return (std::size_t{1} << k) == n ? k : 0;
}

}  // namespace

StateVector::StateVector(std::size_t n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw std::invalid_argument("register size must be 1.." + std::to_string(kMaxQubits) + " qubits");
    }
    amps_.assign(std::size_t{1} << n_qubits, Amplitude{0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector StateVector::from_amplitudes(std::vector<Amplitude> amplitudes) {
    const std::size_t n = log2_exact(amplitudes.size());
    if (n < 1 || n > kMaxQubits) {
        throw std::invalid_argument("amplitude count must be 2^n with 1 <= n <= 6");
    }
    double norm = 0.0;
    for (const auto& a : amplitudes) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw std::invalid_argument("amplitudes must be finite");
        }
        norm += std::norm(a);
    }
    if (std::abs(norm - 1.0) > kNormTolerance) {
        throw std::invalid_argument("state is not normalized (squared norm " + std::to_string(norm) + ")");
    }
    return StateVector(n, std::move(amplitudes));
}

StateVector StateVector::single_qubit(Amplitude zero, Amplitude one) {
    return from_amplitudes({zero, one});
}

double StateVector::norm_squared() const noexcept {
    double sum = 0.0;
    for (const auto& a : amps_) sum += std::norm(a);
    return sum;
}

void StateVector::check(QubitId q) const {
    if (q.index >= n_qubits_) {
        throw std::out_of_range("qubit " + std::to_string(q.index) + " outside a " +
                                std::to_string(n_qubits_) + "-qubit register");
    }
}

std::size_t StateVector::bit_position(QubitId q) const {
    check(q);
    return n_qubits_ - 1 - q.index;
}

StateVector& StateVector::x(QubitId q) {
    const std::size_t mask = std::size_t{1} << bit_position(q);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & mask) == 0) std::swap(amps_[i], amps_[i | mask]);
    }
    return *this;
}

StateVector& StateVector::z(QubitId q) {
    const std::size_t mask = std::size_t{1} << bit_position(q);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & mask) != 0) amps_[i] = -amps_[i];
    }
    return *this;
}

StateVector& StateVector::h(QubitId q) {
    const std::size_t mask = std::size_t{1} << bit_position(q);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & mask) != 0) continue;
        const Amplitude a0 = amps_[i];
        const Amplitude a1 = amps_[i | mask];
        amps_[i] = (a0 + a1) * kInvSqrt2;
        amps_[i | mask] = (a0 - a1) * kInvSqrt2;
    }
    return *this;
}

StateVector& StateVector::cnot(QubitId control, QubitId target) {
    if (control == target) throw std::invalid_argument("cnot needs distinct control and target");
    const std::size_t cmask = std::size_t{1} << bit_position(control);
    const std::size_t tmask = std::size_t{1} << bit_position(target);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & cmask) != 0 && (i & tmask) == 0) std::swap(amps_[i], amps_[i | tmask]);
    }
    return *this;
}

StateVector& StateVector::pauli(QubitId q, PauliCorrection corr) {
    check(q);
    if (corr.x_exp) x(q);
    if (corr.z_exp) z(q);
    return *this;
}

StateVector& StateVector::bell_pair(QubitId first, QubitId second, BellLabel label) {
    if (first == second) throw std::invalid_argument("Bell pair needs two distinct qubits");
    const std::size_t m1 = std::size_t{1} << bit_position(first);
    const std::size_t m2 = std::size_t{1} << bit_position(second);
    double p00 = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & (m1 | m2)) == 0) p00 += std::norm(amps_[i]);
    }
    if (std::abs(p00 - 1.0) > kNormTolerance) {
        throw std::logic_error("Bell pair qubits must start in |00>");
    }
    h(first).cnot(first, second);
    if (label.z) z(second);
    if (label.x) x(second);
    return *this;
}

StateVector& StateVector::bell_to_computational(QubitId q1, QubitId q2) {
    return cnot(q1, q2).h(q1);
}

StateVector& StateVector::computational_to_bell(QubitId q1, QubitId q2) {
    return h(q1).cnot(q1, q2);
}

double StateVector::probability(QubitId q, bool bit) const {
    const std::size_t mask = std::size_t{1} << bit_position(q);
    double p = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (((i & mask) != 0) == bit) p += std::norm(amps_[i]);
    }
    return p;
}

StateVector& StateVector::project(QubitId q, bool bit) {
    const double p = probability(q, bit);
    if (p < kMinOutcomeProbability) {
        throw std::domain_error("projection onto a zero-probability outcome");
    }
    const std::size_t mask = std::size_t{1} << bit_position(q);
    const double scale = 1.0 / std::sqrt(p);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (((i & mask) != 0) == bit) {
            amps_[i] *= scale;
        } else {
            amps_[i] = 0.0;
        }
    }
    return *this;
}

// ---------------------------------------------------------------------------

DensityMatrix::DensityMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim, Amplitude{0.0, 0.0}) {
    if (dim == 0) throw std::invalid_argument("density matrix dimension must be positive");
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
    DensityMatrix rho(dim);
    for (std::size_t i = 0; i < dim; ++i) rho.at(i, i) = 1.0 / double(dim);
    return rho;
}

DensityMatrix DensityMatrix::pure(const StateVector& state) {
    DensityMatrix rho(state.dimension());
    const auto a = state.amplitudes();
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) rho.at(i, j) = a[i] * std::conj(a[j]);
    }
    return rho;
}

Amplitude DensityMatrix::trace() const {
    Amplitude t{0.0, 0.0};
    for (std::size_t i = 0; i < dim_; ++i) t += at(i, i);
    return t;
}

bool DensityMatrix::is_hermitian(double tol) const {
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = i; j < dim_; ++j) {
            if (std::abs(at(i, j) - std::conj(at(j, i))) > tol) return false;
        }
    }
    return true;
}

std::vector<double> DensityMatrix::eigenvalues() const {
    const auto n = static_cast<Eigen::Index>(dim_);
    Eigen::MatrixXcd m(n, n);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) m(Eigen::Index(i), Eigen::Index(j)) = at(i, j);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

double DensityMatrix::purity() const {
    double p = 0.0;
    for (const auto& e : entries_) p += std::norm(e);
    return p;
}

DensityMatrix& DensityMatrix::operator+=(const DensityMatrix& other) {
    if (other.dim_ != dim_) throw std::invalid_argument("density matrix dimension mismatch");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
    return *this;
}

DensityMatrix& DensityMatrix::operator*=(double scale) {
    for (auto& e : entries_) e *= scale;
    return *this;
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("density matrix dimension mismatch");
    DensityMatrix diff = a;
    DensityMatrix neg = b;
    neg *= -1.0;
    diff += neg;
    double sum = 0.0;
    for (double e : diff.eigenvalues()) sum += std::abs(e);
    return 0.5 * sum;
}

// ---------------------------------------------------------------------------

StateVector tensor(const StateVector& a, const StateVector& b) {
    std::vector<Amplitude> out;
    out.reserve(a.dimension() * b.dimension());
    for (const auto& x : a.amplitudes()) {
        for (const auto& y : b.amplitudes()) out.push_back(x * y);
    }
    if (a.qubits() + b.qubits() > StateVector::kMaxQubits) {
        throw std::invalid_argument("tensor product exceeds the register cap");
    }
    return StateVector::from_amplitudes(std::move(out));
}

StateVector prepare_bell(BellLabel label) {
    StateVector s(2);
    s.bell_pair(QubitId{0}, QubitId{1}, label);
    return s;
}

StateVector apply_pauli(StateVector state, QubitId q, PauliCorrection corr) {
    state.pauli(q, corr);
    return state;
}

std::array<double, 4> bell_probabilities(const StateVector& state, QubitId q1, QubitId q2) {
    if (q1 == q2) throw std::invalid_argument("Bell measurement needs two distinct qubits");
    StateVector rotated = state;
    rotated.bell_to_computational(q1, q2);
    const std::size_t m1 = std::size_t{1} << rotated.bit_position(q1);
    const std::size_t m2 = std::size_t{1} << rotated.bit_position(q2);
    std::array<double, 4> p{};
    const auto a = rotated.amplitudes();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const unsigned idx = (((i & m1) != 0) ? 2U : 0U) | (((i & m2) != 0) ? 1U : 0U);
        p[idx] += std::norm(a[i]);
    }
    return p;
}

StateVector project_bell(StateVector state, QubitId q1, QubitId q2, BsmOutcome outcome) {
    if (q1 == q2) throw std::invalid_argument("Bell measurement needs two distinct qubits");
    state.bell_to_computational(q1, q2);
    if (state.probability(q1, outcome.b1) < kMinOutcomeProbability) {
        throw std::domain_error("projection onto a zero-probability Bell outcome");
    }
    state.project(q1, outcome.b1);
    state.project(q2, outcome.b2);
    state.computational_to_bell(q1, q2);
    return state;
}

std::size_t sample_index(std::span<const double> probabilities, double u) {
    double total = 0.0;
    std::size_t last = probabilities.size();
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        if (probabilities[i] >= kMinOutcomeProbability) {
            total += probabilities[i];
            last = i;
        }
    }
    if (last == probabilities.size()) throw std::domain_error("no outcome has nonzero probability");
    const double target = u * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        if (probabilities[i] < kMinOutcomeProbability) continue;
        acc += probabilities[i];
        if (target < acc) return i;
    }
    return last;
}

BellMeasurement bell_measure(const StateVector& state, QubitId q1, QubitId q2, CounterRng& rng) {
    const auto probs = bell_probabilities(state, q1, q2);
    const auto outcome = BsmOutcome::from_index(unsigned(sample_index(probs, rng.uniform())));
    return {outcome, project_bell(state, q1, q2, outcome)};
}

ComputationalMeasurement measure_computational(const StateVector& state, QubitId q, CounterRng& rng) {
    const std::array<double, 2> probs{state.probability(q, false), state.probability(q, true)};
    const bool bit = sample_index(probs, rng.uniform()) == 1;
    StateVector out = state;
    out.project(q, bit);
    return {bit, std::move(out)};
}

DensityMatrix reduced_density(const StateVector& state, std::span<const QubitId> keep) {
    if (keep.empty()) throw std::invalid_argument("reduced_density needs at least one kept qubit");
    std::vector<QubitId> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
        throw std::invalid_argument("reduced_density keep-set has duplicates");
    }
    std::size_t keep_mask = 0;
    std::vector<std::size_t> positions;
    for (const auto q : kept) {
        positions.push_back(state.bit_position(q));
        keep_mask |= std::size_t{1} << positions.back();
    }
    const auto compress = [&](std::size_t i) {
        std::size_t k = 0;
        for (const auto pos : positions) k = (k << 1) | ((i >> pos) & 1U);
        return k;
    };

    DensityMatrix rho(std::size_t{1} << kept.size());
    const auto a = state.amplitudes();
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            if ((i & ~keep_mask) != (j & ~keep_mask)) continue;
            rho.at(compress(i), compress(j)) += a[i] * std::conj(a[j]);
        }
    }
    return rho;
}

DensityMatrix reduced_density(const StateVector& state, std::initializer_list<QubitId> keep) {
    return reduced_density(state, std::span<const QubitId>(keep.begin(), keep.size()));
}

double fidelity(const StateVector& a, const StateVector& b) {
    if (a.dimension() != b.dimension()) throw std::invalid_argument("fidelity needs equal dimensions");
    Amplitude overlap{0.0, 0.0};
    const auto x = a.amplitudes();
    const auto y = b.amplitudes();
    for (std::size_t i = 0; i < x.size(); ++i) overlap += std::conj(x[i]) * y[i];
    return std::clamp(std::norm(overlap), 0.0, 1.0);
}

StateVector factor_out_qubit(const StateVector& state, QubitId q) {
    const QubitId keep[] = {q};
    if (reduced_density(state, keep).purity() < 1.0 - 1e-9) {
        throw std::domain_error("qubit is entangled with the rest of the register");
    }
    const auto a = state.amplitudes();
    const std::size_t mask = std::size_t{1} << state.bit_position(q);
    std::size_t best = 0;
    for (std::size_t i = 1; i < a.size(); ++i) {
        if (std::norm(a[i]) > std::norm(a[best])) best = i;
    }
    const std::size_t rest = best & ~mask;
    const Amplitude a0 = a[rest];
    const Amplitude a1 = a[rest | mask];
    const double n = std::sqrt(std::norm(a0) + std::norm(a1));
    return StateVector::single_qubit(a0 / n, a1 / n);
}

}  // namespace qss
