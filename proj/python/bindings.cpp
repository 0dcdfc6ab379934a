#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qss/bell.hpp"
#include "qss/cli.hpp"
#include "qss/protocol.hpp"
#include "qss/security.hpp"

namespace py = pybind11;
using namespace qss;

namespace {

py::tuple rational(const Rational& r) { return py::make_tuple(r.num, r.den); }

PieceSet piece_mask(const std::vector<std::string>& names) {
    static const std::map<std::string, Piece> lookup{
        {"s1", Piece::s1}, {"s2", Piece::s2}, {"R1", Piece::bsm_r1}, {"ss", Piece::bsm_s}};
    PieceSet set;
    for (const auto& n : names) {
        const auto it = lookup.find(n);
        if (it == lookup.end()) throw std::invalid_argument("unknown piece '" + n + "' (use s1, s2, R1, ss)");
        set.set(unsigned(it->second));
    }
    return set;
}

}  // namespace

PYBIND11_MODULE(_qss, m) {
    m.doc() = "Bell-pair quantum secret sharing: simulator, tables and security analysis";

    py::class_<BellLabel>(m, "BellLabel")
        .def(py::init([](bool z, bool x) { return BellLabel{z, x}; }), py::arg("z"), py::arg("x"))
        .def_static("parse", &parse_bell_label)
        .def_readonly("z", &BellLabel::z)
        .def_readonly("x", &BellLabel::x)
        .def_property_readonly("name", [](BellLabel l) { return std::string(name(l)); })
        .def("__eq__", [](BellLabel a, BellLabel b) { return a == b; })
        .def("__hash__", [](BellLabel l) { return l.index(); })
        .def("__repr__", [](BellLabel l) { return "BellLabel(" + std::string(name(l)) + ")"; });

    py::class_<BsmOutcome>(m, "BsmOutcome")
        .def(py::init([](bool b1, bool b2) { return BsmOutcome{b1, b2}; }), py::arg("b1"), py::arg("b2"))
        .def_static("parse", &parse_bsm_outcome)
        .def_readonly("b1", &BsmOutcome::b1)
        .def_readonly("b2", &BsmOutcome::b2)
        .def("__eq__", [](BsmOutcome a, BsmOutcome b) { return a == b; })
        .def("__hash__", [](BsmOutcome o) { return o.index(); })
        .def("__repr__", [](BsmOutcome o) { return "BsmOutcome(" + bits(o) + ")"; });

    py::class_<PauliCorrection>(m, "PauliCorrection")
        .def(py::init([](bool z, bool x) { return PauliCorrection{z, x}; }), py::arg("z_exp"), py::arg("x_exp"))
        .def_readonly("z_exp", &PauliCorrection::z_exp)
        .def_readonly("x_exp", &PauliCorrection::x_exp)
        .def_property_readonly("name", [](PauliCorrection c) { return std::string(name(c)); })
        .def("__eq__", [](PauliCorrection a, PauliCorrection b) { return a == b; })
        .def("__hash__", [](PauliCorrection c) { return c.index(); })
        .def("__repr__", [](PauliCorrection c) { return "PauliCorrection(" + std::string(name(c)) + ")"; });

    m.def("teleport_correction", &teleport_correction, py::arg("channel"), py::arg("bsm"));
    m.def("swap_result", &swap_result, py::arg("pair_sr1"), py::arg("pair_r1r2"), py::arg("bsm_r1"));
    m.def("infer_remote_bsm", &infer_remote_bsm, py::arg("pair_a"), py::arg("pair_b"), py::arg("own_bsm"));
    m.def("end_to_end_correction", &end_to_end_correction, py::arg("r1"), py::arg("r2"), py::arg("bsm_r1"),
          py::arg("bsm_s"));
    m.def("decode_classical", &decode_classical, py::arg("xi_prime"), py::arg("corr"));

    m.def("verify_tables", [] {
        const auto r = compare_with_reference(shipped_tables());
        return py::dict(py::arg("teleport_verified") = r.teleport_matches(),
                        py::arg("teleport_total") = r.teleport_rows.size(),
                        py::arg("swap_verified") = r.swap_matches(), py::arg("swap_total") = r.swap_rows.size());
    });

    m.def(
        "run_qss22",
        [](bool secret, std::uint64_t seed, const std::string& attack, std::uint64_t trial) {
            const auto run = run_qss22(secret, seed, AttackModel::parse(attack), trial);
            return py::dict(py::arg("secret") = run.secret, py::arg("accepted") = run.accepted(),
                            py::arg("reconstructed") = run.reconstructed, py::arg("jsonl") = to_jsonl(run.transcript),
                            py::arg("text") = to_text(run.transcript));
        },
        py::arg("secret"), py::arg("seed"), py::arg("attack") = "none", py::arg("trial") = 0);

    m.def(
        "run_qss55",
        [](Amplitude r, Amplitude s, std::uint64_t seed, std::uint64_t trial) {
            const auto secret = StateVector::single_qubit(r, s);
            const auto run = run_qss55(r, s, seed, trial);
            const auto recovered = reconstruct55(run.shares);
            return py::dict(py::arg("recovered") = py::make_tuple(recovered[0], recovered[1]),
                            py::arg("fidelity") = fidelity(recovered, secret),
                            py::arg("jsonl") = to_jsonl(run.transcript), py::arg("text") = to_text(run.transcript));
        },
        py::arg("r"), py::arg("s"), py::arg("seed"), py::arg("trial") = 0);

    m.def(
        "mutual_information",
        [](const std::string& view) {
            const auto r = mutual_information_22(AdversaryView::parse(view));
            return py::dict(py::arg("view") = r.view, py::arg("bits") = r.mutual_information_bits,
                            py::arg("exactly_independent") = r.exactly_independent,
                            py::arg("determines_secret") = r.determines_secret,
                            py::arg("guess_success") = rational(r.guess_success),
                            py::arg("cases") = r.cases_enumerated);
        },
        py::arg("view"));

    m.def(
        "exact_detection_rate", [](const std::string& attack) { return rational(exact_detection_rate(AttackModel::parse(attack))); },
        py::arg("attack"));

    m.def(
        "attack_sweep",
        [](const std::string& attack, std::uint64_t trials, std::uint64_t seed) {
            const auto r = attack_sweep(AttackModel::parse(attack), trials, seed);
            return py::dict(py::arg("attack") = r.attack.to_string(), py::arg("trials") = r.trials,
                            py::arg("detected") = r.detected, py::arg("rate") = r.detection_rate,
                            py::arg("ci99") = py::make_tuple(r.ci_low, r.ci_high),
                            py::arg("exact") = rational(*r.exact_rate),
                            py::arg("consistent_with_exact") = r.consistent_with_exact);
        },
        py::arg("attack"), py::arg("trials"), py::arg("seed") = 0);

    m.def(
        "encrypted_qubit_mixedness",
        [](const std::vector<std::string>& known, Amplitude r, Amplitude s) {
            return encrypted_qubit_mixedness_55(piece_mask(known), StateVector::single_qubit(r, s));
        },
        py::arg("known"), py::arg("r") = Amplitude(0.6, 0.0), py::arg("s") = Amplitude(0.0, 0.8));

    m.def(
        "cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            const int code = cli::run_cli(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));

    py::register_exception<IncompleteShares>(m, "IncompleteShares");
}
