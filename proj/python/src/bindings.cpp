#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "darkrabi/blocks.hpp"
#include "darkrabi/darksolver.hpp"
#include "darkrabi/model.hpp"
#include "darkrabi/omatrix.hpp"
#include "darkrabi/spectrum.hpp"

namespace py = pybind11;
using namespace darkrabi;

PYBIND11_MODULE(_core, m) {
    m.doc() = "N-qubit M-photon Rabi model: parity chains, dark states, spectra";

    // ---- model ----
    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init([](int n_qubits, std::vector<double> couplings,
                         std::vector<double> splittings, int photon_order, double omega) {
                 ModelParams p;
                 p.n_qubits = n_qubits;
                 p.couplings = std::move(couplings);
                 p.splittings = std::move(splittings);
                 p.photon_order = photon_order;
                 p.omega = omega;
                 p.validate();
                 return p;
             }),
             py::arg("n_qubits"), py::arg("couplings"), py::arg("splittings"),
             py::arg("photon_order") = 1, py::arg("omega") = 1.0)
        .def_readonly("n_qubits", &ModelParams::n_qubits)
        .def_readonly("photon_order", &ModelParams::photon_order)
        .def_readonly("omega", &ModelParams::omega)
        .def_readonly("couplings", &ModelParams::couplings)
        .def_readonly("splittings", &ModelParams::splittings)
        .def("with_coupling_scale", &ModelParams::with_coupling_scale, py::arg("s"));

    py::class_<SubspaceLabel>(m, "SubspaceLabel")
        .def(py::init([](int i, int parity) {
                 SubspaceLabel lab{i, parity};
                 return lab;
             }),
             py::arg("i"), py::arg("parity"))
        .def_readonly("i", &SubspaceLabel::i)
        .def_readonly("parity", &SubspaceLabel::parity)
        .def("r_eigenvalue", &SubspaceLabel::r_eigenvalue)
        .def("__repr__", [](const SubspaceLabel& l) {
            return "SubspaceLabel(i=" + std::to_string(l.i) +
                   ", parity=" + std::string(l.parity > 0 ? "+1" : "-1") + ")";
        });

    m.def("all_labels", &all_labels, py::arg("photon_order"));
    m.def("chain_sequence", &chain_sequence, py::arg("label"), py::arg("photon_order"),
          py::arg("n_blocks"));
    m.def(
        "parity_sectors",
        [](int n_qubits) {
            const ParityChainBasis basis = parity_chain_basis(n_qubits);
            std::vector<std::string> plus, minus;
            for (const QubitConfig& q : basis.sector(+1)) plus.push_back(q.to_string());
            for (const QubitConfig& q : basis.sector(-1)) minus.push_back(q.to_string());
            return py::make_tuple(plus, minus);
        },
        py::arg("n_qubits"), "Configuration strings of the +1 and -1 parity sectors");

    // ---- coupling matrix ----
    m.def("coupling_matrix", &coupling_matrix, py::arg("couplings"));
    m.def(
        "sign_pattern_eigs",
        [](const std::vector<double>& g) {
            std::vector<py::tuple> out;
            for (const PatternEig& pe : sign_pattern_eigs(g))
                out.push_back(py::make_tuple(pe.pattern.to_string(), pe.value, pe.vector));
            return out;
        },
        py::arg("couplings"), "List of (sign pattern, eigenvalue, eigenvector)");
    m.def(
        "zero_modes",
        [](const std::vector<double>& g, double tol) {
            const ZeroModeBasis zm = zero_modes(g, tol);
            std::vector<std::string> patterns;
            for (const SignPattern& p : zm.patterns) patterns.push_back(p.to_string());
            return py::make_tuple(patterns, zm.vectors);
        },
        py::arg("couplings"), py::arg("tol") = 1e-12,
        "Sign patterns and an orthonormal basis of the coupling-matrix kernel");
    m.def(
        "snap_coupling",
        [](const std::vector<double>& g, const std::string& pattern) {
            return snap_coupling(g, SignPattern::from_string(pattern));
        },
        py::arg("couplings"), py::arg("pattern"));

    // ---- chains ----
    m.def(
        "chain_matrix",
        [](const ModelParams& p, const SubspaceLabel& label, int n_blocks) {
            return assemble_chain(p, label, n_blocks).dense();
        },
        py::arg("params"), py::arg("label"), py::arg("n_blocks"),
        "Dense block-tridiagonal chain Hamiltonian, units of omega");
    m.def("offdiag_factor", &offdiag_factor, py::arg("photon_order"), py::arg("i"), py::arg("j"));
    m.def("dense_oracle", &dense_oracle, py::arg("params"), py::arg("cutoff"),
          py::arg("dim_cap") = 20000, "Brute-force Hamiltonian on the full truncated space");
    m.def("chain_union_spectrum", &chain_union_spectrum, py::arg("params"), py::arg("cutoff"));

    // ---- dark states ----
    py::class_<Amplitude>(m, "Amplitude")
        .def_readonly("photon", &Amplitude::photon)
        .def_property_readonly("qubits",
                               [](const Amplitude& a) { return a.config.to_string(); })
        .def_readonly("value", &Amplitude::value);

    py::class_<DarkLikeState>(m, "DarkLikeState")
        .def_readonly("label", &DarkLikeState::label)
        .def_readonly("energy", &DarkLikeState::energy)
        .def_readonly("family", &DarkLikeState::family)
        .def_readonly("amplitudes", &DarkLikeState::amplitudes)
        .def_readonly("normalized", &DarkLikeState::normalized)
        .def("max_photon", &DarkLikeState::max_photon)
        .def("norm", &DarkLikeState::norm)
        .def("normalized_view", &DarkLikeState::normalized_view);

    py::class_<Relation>(m, "Relation")
        .def_readonly("g_coeff", &Relation::g_coeff)
        .def_readonly("d_coeff", &Relation::d_coeff)
        .def_readonly("omega_coeff", &Relation::omega_coeff)
        .def("residual", &Relation::residual, py::arg("params"))
        .def("text", &Relation::text);

    py::class_<FamilyCondition>(m, "FamilyCondition")
        .def_readonly("id", &FamilyCondition::id)
        .def_readonly("variant", &FamilyCondition::variant)
        .def_readonly("photon_order", &FamilyCondition::photon_order)
        .def_readonly("subspace_i", &FamilyCondition::subspace_i)
        .def_readonly("parity", &FamilyCondition::parity)
        .def_readonly("predicted_energy", &FamilyCondition::predicted_energy)
        .def_readonly("degeneracy", &FamilyCondition::degeneracy)
        .def_readonly("constraints", &FamilyCondition::constraints)
        .def_readonly("active", &FamilyCondition::active)
        .def_readonly("singlets", &FamilyCondition::singlets)
        .def("satisfied", &FamilyCondition::satisfied, py::arg("params"), py::arg("tol") = 1e-9);

    m.def("catalog_match", &catalog_match, py::arg("params"), py::arg("tol") = 1e-9);
    m.def("lift_to_multiphoton", &lift_to_multiphoton, py::arg("family"), py::arg("photon_order"),
          py::arg("i"));
    m.def("build_states", &build_states, py::arg("family"), py::arg("params"),
          py::arg("tol") = 1e-9);

    py::class_<VerifyReport>(m, "VerifyReport")
        .def_readonly("residual", &VerifyReport::residual)
        .def_readonly("energy", &VerifyReport::energy)
        .def_readonly("blocks_used", &VerifyReport::blocks_used)
        .def_readonly("pass_", &VerifyReport::pass)
        .def("__repr__", [](const VerifyReport& r) {
            return "VerifyReport(residual=" + std::to_string(r.residual) +
                   ", energy=" + std::to_string(r.energy) + ")";
        });

    m.def("verify_state", &verify_state, py::arg("params"), py::arg("state"),
          py::arg("tol") = 1e-11);

    py::class_<ScanCandidate>(m, "ScanCandidate")
        .def_readonly("energy", &ScanCandidate::energy)
        .def_readonly("sigma_min", &ScanCandidate::sigma_min)
        .def_readonly("scale", &ScanCandidate::scale)
        .def_readonly("status", &ScanCandidate::status);

    py::class_<ScanResult>(m, "ScanResult")
        .def_readonly("states", &ScanResult::states)
        .def_readonly("diagnostics", &ScanResult::diagnostics);

    m.def("generic_scan", &generic_scan, py::arg("params"), py::arg("label"), py::arg("e_min"),
          py::arg("e_max"), py::arg("tol") = 1e-10, py::arg("grid_points") = 601);

    // ---- spectrum ----
    py::enum_<StabilityRegime>(m, "StabilityRegime")
        .value("AlwaysStable", StabilityRegime::AlwaysStable)
        .value("Stable", StabilityRegime::Stable)
        .value("AtThreshold", StabilityRegime::AtThreshold)
        .value("Unstable", StabilityRegime::Unstable)
        .value("NeverConvergent", StabilityRegime::NeverConvergent);

    py::class_<StabilityReport>(m, "StabilityReport")
        .def_readonly("regime", &StabilityReport::regime)
        .def_readonly("lambda_", &StabilityReport::lambda)
        .def_readonly("threshold", &StabilityReport::threshold)
        .def_readonly("note", &StabilityReport::note)
        .def("ok", &StabilityReport::ok);

    m.def("stability_check", &stability_check, py::arg("params"), py::arg("eps") = 1e-12);

    py::class_<ChainEigs>(m, "ChainEigs")
        .def_readonly("label", &ChainEigs::label)
        .def_readonly("blocks", &ChainEigs::blocks)
        .def_readonly("values", &ChainEigs::values)
        .def_readonly("converged", &ChainEigs::converged);

    m.def("diagonalize_chain", &diagonalize_chain, py::arg("params"), py::arg("label"),
          py::arg("n_blocks"), py::arg("levels"), py::arg("tol_conv") = 1e-9);

    py::class_<SweepOptions>(m, "SweepOptions")
        .def(py::init<>())
        .def_readwrite("blocks", &SweepOptions::blocks)
        .def_readwrite("levels", &SweepOptions::levels)
        .def_readwrite("allow_unstable", &SweepOptions::allow_unstable)
        .def_readwrite("require_converged", &SweepOptions::require_converged)
        .def_readwrite("threads", &SweepOptions::threads)
        .def_readwrite("tol_conv", &SweepOptions::tol_conv);

    py::class_<SweepPoint>(m, "SweepPoint")
        .def_readonly("s", &SweepPoint::s)
        .def_readonly("chains", &SweepPoint::chains);

    py::class_<SpectrumSweep>(m, "SpectrumSweep")
        .def_readonly("labels", &SpectrumSweep::labels)
        .def_readonly("grid", &SpectrumSweep::grid)
        .def_readonly("points", &SpectrumSweep::points)
        .def_readonly("cut_index", &SpectrumSweep::cut_index);

    m.def("sweep", &sweep, py::arg("base"), py::arg("s_min"), py::arg("s_max"), py::arg("steps"),
          py::arg("options") = SweepOptions{});

    py::class_<HorizontalLine>(m, "HorizontalLine")
        .def_readonly("label", &HorizontalLine::label)
        .def_readonly("value", &HorizontalLine::value)
        .def_readonly("max_deviation", &HorizontalLine::max_deviation)
        .def_readonly("multiplicity", &HorizontalLine::multiplicity);

    m.def("detect_horizontal", &detect_horizontal, py::arg("sweep"), py::arg("tol") = 1e-7);
}
