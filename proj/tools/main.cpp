// darkrabi: block-tridiagonal construction, dark-state certification and
// spectrum sweeps for the N-qubit M-photon Rabi model.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "darkrabi/blocks.hpp"
#include "darkrabi/darksolver.hpp"
#include "darkrabi/model.hpp"
#include "darkrabi/omatrix.hpp"
#include "darkrabi/serialize.hpp"
#include "darkrabi/spectrum.hpp"

namespace {

using nlohmann::json;
namespace dr = darkrabi;

constexpr int kExitOk = 0;
constexpr int kExitBadConfig = 1;
constexpr int kExitUnstable = 2;
constexpr int kExitNoDarkState = 3;

struct Common {
    std::string config_path;
    std::string out_path;
    bool as_json = false;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--config", c.config_path, "JSON run configuration")->required();
    cmd->add_option("--out", c.out_path, "write output to this file (atomic) instead of stdout");
    cmd->add_flag("--json", c.as_json, "emit JSON instead of text");
}

void emit(const Common& c, const std::string& content) {
    if (c.out_path.empty())
        std::cout << content;
    else
        dr::atomic_write(c.out_path, content);
}

dr::ModelParams need_model(const dr::RunConfig& cfg) {
    if (!cfg.model) throw std::invalid_argument("config: missing \"model\" section");
    return *cfg.model;
}

std::string fmt(double v) { return dr::format_sig(v); }

char pchar(int parity) { return parity > 0 ? '+' : '-'; }

dr::SubspaceLabel parse_subspace(const std::string& text, int photon_order) {
    const auto comma = text.find(',');
    if (comma == std::string::npos || comma + 2 != text.size())
        throw std::invalid_argument("--subspace: expected \"i,+\" or \"i,-\"");
    dr::SubspaceLabel label;
    try {
        label.i = std::stoi(text.substr(0, comma));
    } catch (const std::exception&) {
        throw std::invalid_argument("--subspace: bad index '" + text.substr(0, comma) + "'");
    }
    const char p = text[comma + 1];
    if (p != '+' && p != '-') throw std::invalid_argument("--subspace: parity must be + or -");
    label.parity = (p == '+') ? +1 : -1;
    dr::validate_label(label, photon_order);
    return label;
}

// -------------------- chains --------------------

int run_chains(const Common& c, int blocks_flag) {
    const dr::RunConfig cfg = dr::load_config(c.config_path);
    const dr::ModelParams params = need_model(cfg);
    const int n_blocks = blocks_flag > 0 ? blocks_flag : cfg.blocks.value_or(4);

    std::vector<dr::BlockChain> chains;
    for (const dr::SubspaceLabel& label : dr::all_labels(params.photon_order))
        chains.push_back(dr::assemble_chain(params, label, n_blocks));

    if (c.as_json) {
        json out{{"model", dr::params_to_json(params)}, {"chains", json::array()}};
        for (const dr::BlockChain& ch : chains) {
            json blocks = json::array();
            for (int j = 0; j < ch.n_blocks; ++j) {
                std::vector<double> diag(ch.diag[static_cast<std::size_t>(j)].data(),
                                         ch.diag[static_cast<std::size_t>(j)].data() +
                                             ch.block_dim);
                blocks.push_back({{"photon", ch.photon_of_block(j)},
                                  {"sector", std::string(1, pchar(ch.sector_of_block(j)))},
                                  {"diag", diag}});
            }
            json core = json::array();
            for (int r = 0; r < ch.block_dim; ++r) {
                std::vector<double> row(ch.block_dim);
                for (int col = 0; col < ch.block_dim; ++col) row[static_cast<std::size_t>(col)] = ch.core(r, col);
                core.push_back(row);
            }
            out["chains"].push_back({{"subspace", {{"i", ch.label.i},
                                                   {"parity", std::string(1, pchar(ch.label.parity))}}},
                                     {"blocks", std::move(blocks)},
                                     {"factors", ch.factors},
                                     {"core", std::move(core)}});
        }
        emit(c, out.dump(2) + "\n");
        return kExitOk;
    }

    std::string out;
    out += "model: N=" + std::to_string(params.n_qubits) +
           " qubits, photon order M=" + std::to_string(params.photon_order) +
           ", omega=" + fmt(params.omega) + "\n";
    const dr::ParityChainBasis basis = dr::parity_chain_basis(params.n_qubits);
    for (int parity : {+1, -1}) {
        out += std::string("sector ") + pchar(parity) + ":";
        for (const dr::QubitConfig& q : basis.sector(parity)) out += " " + q.to_string();
        out += "\n";
    }
    for (const dr::BlockChain& ch : chains) {
        out += "\nchain (" + std::to_string(ch.label.i) + "," + pchar(ch.label.parity) + "):\n";
        for (int j = 0; j < ch.n_blocks; ++j) {
            out += "  block " + std::to_string(j) + ": photon " +
                   std::to_string(ch.photon_of_block(j)) + ", sector " +
                   std::string(1, pchar(ch.sector_of_block(j))) + ", diag [";
            for (int r = 0; r < ch.block_dim; ++r)
                out += (r ? ", " : "") + fmt(ch.diag[static_cast<std::size_t>(j)](r));
            out += "]\n";
        }
        out += "  factors [";
        for (std::size_t j = 0; j < ch.factors.size(); ++j)
            out += (j ? ", " : "") + fmt(ch.factors[j]);
        out += "]\n";
    }
    emit(c, out);
    return kExitOk;
}

// -------------------- omatrix --------------------

int run_omatrix(const Common& c, const std::string& snap, double tol_flag) {
    const dr::RunConfig cfg = dr::load_config(c.config_path);
    dr::ModelParams params = need_model(cfg);
    const double tol = tol_flag > 0 ? tol_flag : cfg.tol.value_or(1e-12);

    bool snapped = false;
    if (!snap.empty()) {
        params.couplings = dr::snap_coupling(params.couplings, dr::SignPattern::from_string(snap));
        params.validate();
        snapped = true;
    }

    const std::vector<dr::PatternEig> eigs = dr::sign_pattern_eigs(params.couplings);
    const dr::ZeroModeBasis zm = dr::zero_modes(params.couplings, tol);

    if (c.as_json) {
        json out{{"couplings", params.couplings},
                 {"snapped", snapped},
                 {"eigenvalues", json::array()},
                 {"zero_modes", json::array()}};
        for (const dr::PatternEig& pe : eigs) {
            std::vector<double> vec(pe.vector.data(), pe.vector.data() + pe.vector.size());
            out["eigenvalues"].push_back(
                {{"pattern", pe.pattern.to_string()}, {"value", pe.value}, {"vector", vec}});
        }
        for (std::size_t k = 0; k < zm.patterns.size(); ++k) {
            std::vector<double> vec(zm.vectors.col(static_cast<Eigen::Index>(k)).data(),
                                    zm.vectors.col(static_cast<Eigen::Index>(k)).data() +
                                        zm.vectors.rows());
            out["zero_modes"].push_back(
                {{"pattern", zm.patterns[k].to_string()}, {"vector", vec}});
        }
        emit(c, out.dump(2) + "\n");
        return kExitOk;
    }

    std::string out = "couplings:";
    for (double g : params.couplings) out += " " + fmt(g);
    out += snapped ? "  (snapped " + snap + ")\n" : "\n";
    out += "pattern  value  vector\n";
    for (const dr::PatternEig& pe : eigs) {
        out += pe.pattern.to_string() + "  " + fmt(pe.value) + "  [";
        for (Eigen::Index r = 0; r < pe.vector.size(); ++r)
            out += (r ? ", " : "") + fmt(pe.vector(r));
        out += "]\n";
    }
    out += "zero modes: " + std::to_string(zm.count());
    for (const dr::SignPattern& p : zm.patterns) out += " " + p.to_string();
    out += "\n";
    emit(c, out);
    return kExitOk;
}

// -------------------- dark find --------------------

int run_dark_find(const Common& c, double tol_flag, bool require) {
    const dr::RunConfig cfg = dr::load_config(c.config_path);
    const dr::ModelParams params = need_model(cfg);
    const double tol = tol_flag > 0 ? tol_flag : cfg.tol.value_or(1e-9);

    const std::vector<dr::FamilyCondition> families = dr::catalog_match(params, tol);
    struct Entry {
        dr::DarkLikeState state;
        dr::VerifyReport report;
    };
    std::vector<Entry> entries;
    for (const dr::FamilyCondition& fam : families)
        for (dr::DarkLikeState& st : dr::build_states(fam, params, tol)) {
            dr::VerifyReport rep = dr::verify_state(params, st);
            entries.push_back({std::move(st), rep});
        }

    if (c.as_json) {
        json out{{"model", dr::params_to_json(params)},
                 {"families", json::array()},
                 {"states", json::array()}};
        for (const dr::FamilyCondition& fam : families)
            out["families"].push_back(dr::family_to_json(fam, params.omega));
        for (const Entry& e : entries)
            out["states"].push_back({{"state", dr::state_to_json(e.state, params.omega)},
                                     {"verify", dr::verify_to_json(e.report, params.omega)}});
        emit(c, out.dump(2) + "\n");
    } else {
        std::string out;
        if (families.empty()) out += "no catalog family matches these parameters\n";
        for (const dr::FamilyCondition& fam : families) {
            out += fam.id + (fam.variant.empty() ? "" : " [" + fam.variant + "]") + "  subspace (" +
                   std::to_string(fam.subspace_i) + "," + pchar(fam.parity) + ")  E=" +
                   fmt(fam.predicted_energy * params.omega) + "  degeneracy " +
                   std::to_string(fam.degeneracy) + "\n";
            for (const dr::Relation& rel : fam.constraints) out += "    " + rel.text() + "\n";
        }
        for (const Entry& e : entries) {
            out += "state " + e.state.family + " (" + std::to_string(e.state.label.i) + "," +
                   pchar(e.state.label.parity) + ")  E=" + fmt(e.state.energy * params.omega) +
                   "  residual=" + fmt(e.report.residual) +
                   (e.report.pass ? "  ok" : "  FAIL") + "\n";
            for (const dr::Amplitude& a : e.state.amplitudes)
                out += "    |" + std::to_string(a.photon) + "," + a.config.to_string() +
                       "> : " + fmt(a.value) + "\n";
        }
        emit(c, out);
    }
    if (require && entries.empty()) {
        std::cerr << "darkrabi: no dark state found (required)\n";
        return kExitNoDarkState;
    }
    return kExitOk;
}

// -------------------- dark scan --------------------

int run_dark_scan(const Common& c, const std::string& subspace,
                  const std::vector<double>& window, double tol_flag, int grid_flag) {
    const dr::RunConfig cfg = dr::load_config(c.config_path);
    const dr::ModelParams params = need_model(cfg);
    const double tol = tol_flag > 0 ? tol_flag : cfg.tol.value_or(1e-10);
    const int grid = grid_flag > 0 ? grid_flag : cfg.grid.value_or(601);

    std::vector<dr::SubspaceLabel> labels;
    if (!subspace.empty())
        labels.push_back(parse_subspace(subspace, params.photon_order));
    else
        labels = dr::all_labels(params.photon_order);

    json results = json::array();
    std::string text;
    for (const dr::SubspaceLabel& label : labels) {
        double lo, hi;
        if (window.size() == 2) {
            lo = window[0] / params.omega;
            hi = window[1] / params.omega;
        } else if (cfg.window_lo && cfg.window_hi) {
            lo = *cfg.window_lo / params.omega;
            hi = *cfg.window_hi / params.omega;
        } else {
            lo = label.i;
            hi = label.i + 2 * params.photon_order + 1;
        }
        const dr::ScanResult res = dr::generic_scan(params, label, lo, hi, tol, grid);

        if (c.as_json) {
            json r{{"subspace", {{"i", label.i}, {"parity", std::string(1, pchar(label.parity))}}},
                   {"window", {lo * params.omega, hi * params.omega}},
                   {"states", json::array()},
                   {"diagnostics", json::array()}};
            for (const dr::DarkLikeState& st : res.states)
                r["states"].push_back(dr::state_to_json(st, params.omega));
            for (const dr::ScanCandidate& d : res.diagnostics)
                r["diagnostics"].push_back(dr::scan_diag_to_json(d, params.omega));
            results.push_back(std::move(r));
        } else {
            text += "subspace (" + std::to_string(label.i) + "," + pchar(label.parity) +
                    ") window [" + fmt(lo * params.omega) + ", " + fmt(hi * params.omega) + "]\n";
            for (const dr::ScanCandidate& d : res.diagnostics)
                text += "  E=" + fmt(d.energy * params.omega) + "  sigma_min=" + fmt(d.sigma_min) +
                        "  " + d.status + "\n";
            for (const dr::DarkLikeState& st : res.states) {
                text += "  state E=" + fmt(st.energy * params.omega) + "\n";
                for (const dr::Amplitude& a : st.amplitudes)
                    text += "    |" + std::to_string(a.photon) + "," + a.config.to_string() +
                            "> : " + fmt(a.value) + "\n";
            }
        }
    }

    if (c.as_json) {
        json out{{"model", dr::params_to_json(params)}, {"results", std::move(results)}};
        emit(c, out.dump(2) + "\n");
    } else {
        emit(c, text);
    }
    return kExitOk;
}

// -------------------- dark verify --------------------

int run_dark_verify(const Common& c, const std::string& state_path, double tol_flag) {
    const dr::RunConfig cfg = dr::load_config(c.config_path);
    const dr::ModelParams params = need_model(cfg);
    const double tol = tol_flag > 0 ? tol_flag : cfg.tol.value_or(1e-11);

    json j;
    try {
        j = json::parse(dr::read_file(state_path));
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("state: " + state_path + ": " + e.what());
    }
    const dr::DarkLikeState state = dr::state_from_json(j, params.omega);
    const dr::VerifyReport rep = dr::verify_state(params, state, tol);

    if (c.as_json) {
        emit(c, dr::verify_to_json(rep, params.omega).dump(2) + "\n");
    } else {
        emit(c, std::string("residual=") + fmt(rep.residual) + "  energy=" +
                    fmt(rep.energy * params.omega) + "  blocks=" +
                    std::to_string(rep.blocks_used) + (rep.pass ? "  pass\n" : "  FAIL\n"));
    }
    return rep.pass ? kExitOk : kExitNoDarkState;
}

// -------------------- spectrum --------------------

int run_spectrum(const Common& c, std::optional<double> s_min, std::optional<double> s_max,
                 std::optional<int> steps, std::optional<int> blocks, std::optional<int> levels,
                 int threads, bool require_converged, bool allow_unstable,
                 const std::string& lines_path, double lines_tol) {
    const dr::RunConfig cfg = dr::load_config(c.config_path);
    const dr::ModelParams params = need_model(cfg);

    dr::SweepOptions opt;
    opt.blocks = blocks ? *blocks : cfg.blocks.value_or(40);
    opt.levels = levels ? *levels : cfg.levels.value_or(12);
    opt.threads = threads;
    opt.require_converged = require_converged;
    opt.allow_unstable = allow_unstable;

    const double lo = s_min ? *s_min : cfg.s_min.value_or(0.0);
    const double hi = s_max ? *s_max : cfg.s_max.value_or(1.0);
    const int n = steps ? *steps : cfg.steps.value_or(21);

    const dr::SpectrumSweep sw = dr::sweep(params, lo, hi, n, opt);
    emit(c, dr::sweep_csv(sw));

    if (!lines_path.empty()) {
        json out{{"lines", json::array()}};
        for (const dr::HorizontalLine& line : dr::detect_horizontal(sw, lines_tol))
            out["lines"].push_back(dr::line_to_json(line, params.omega));
        dr::atomic_write(lines_path, out.dump(2) + "\n");
    }

    if (sw.cut_index >= 0) {
        std::cerr << "darkrabi: sweep stopped at s=" << fmt(sw.grid[static_cast<std::size_t>(sw.cut_index)])
                  << " (not stable; pass --allow-unstable to cross the threshold)\n";
        return kExitUnstable;
    }
    return kExitOk;
}

// -------------------- stability --------------------

int run_stability(const Common& c) {
    const dr::RunConfig cfg = dr::load_config(c.config_path);
    const dr::ModelParams params = need_model(cfg);
    const dr::StabilityReport rep = dr::stability_check(params);

    if (c.as_json) {
        emit(c, dr::stability_to_json(rep).dump(2) + "\n");
    } else {
        std::string out = std::string("regime: ") + dr::to_string(rep.regime) +
                          "\nlambda: " + fmt(rep.lambda);
        if (params.photon_order == 2) out += "\nthreshold: " + fmt(rep.threshold);
        if (!rep.note.empty()) out += "\nnote: " + rep.note;
        emit(c, out + "\n");
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"N-qubit M-photon Rabi model: chains, dark states, spectra"};
    app.require_subcommand(1);
    int rc = kExitOk;

    // chains
    Common chains_c;
    int chains_blocks = 0;
    CLI::App* chains = app.add_subcommand("chains", "dump parity sectors and chain blocks");
    add_common(chains, chains_c);
    chains->add_option("--blocks", chains_blocks, "number of blocks to list");
    chains->callback([&] { rc = run_chains(chains_c, chains_blocks); });

    // omatrix
    Common om_c;
    std::string om_snap;
    double om_tol = 0.0;
    CLI::App* om = app.add_subcommand("omatrix", "coupling-matrix eigenvalues and zero modes");
    add_common(om, om_c);
    om->add_option("--snap", om_snap, "adjust g1 so this sign pattern (e.g. +-+) is an exact zero");
    om->add_option("--tol", om_tol, "zero-mode tolerance");
    om->callback([&] { rc = run_omatrix(om_c, om_snap, om_tol); });

    // dark
    CLI::App* dark = app.add_subcommand("dark", "find, scan for, or verify dark states");
    dark->require_subcommand(1);

    Common find_c;
    double find_tol = 0.0;
    bool find_require = false;
    CLI::App* find = dark->add_subcommand("find", "match catalog families and build their states");
    add_common(find, find_c);
    find->add_option("--tol", find_tol, "constraint tolerance");
    find->add_flag("--require", find_require, "exit 3 when nothing matches");
    find->callback([&] { rc = run_dark_find(find_c, find_tol, find_require); });

    Common scan_c;
    std::string scan_subspace;
    std::vector<double> scan_window;
    double scan_tol = 0.0;
    int scan_grid = 0;
    CLI::App* scan = dark->add_subcommand("scan", "search a chain for bounded-support states");
    add_common(scan, scan_c);
    scan->add_option("--subspace", scan_subspace, "restrict to one chain, e.g. 0,+");
    scan->add_option("--window", scan_window, "energy window LO HI")->expected(2);
    scan->add_option("--tol", scan_tol, "singular-value acceptance tolerance");
    scan->add_option("--grid", scan_grid, "energy grid points");
    scan->callback(
        [&] { rc = run_dark_scan(scan_c, scan_subspace, scan_window, scan_tol, scan_grid); });

    Common verify_c;
    std::string verify_state_path;
    double verify_tol = 0.0;
    CLI::App* verify = dark->add_subcommand("verify", "residual-check a state file");
    add_common(verify, verify_c);
    verify->add_option("--state", verify_state_path, "state JSON file")->required();
    verify->add_option("--tol", verify_tol, "residual tolerance");
    verify->callback([&] { rc = run_dark_verify(verify_c, verify_state_path, verify_tol); });

    // spectrum
    Common spec_c;
    std::optional<double> sp_smin, sp_smax;
    std::optional<int> sp_steps, sp_blocks, sp_levels;
    int sp_threads = 1;
    bool sp_require_conv = false, sp_allow_unstable = false;
    std::string sp_lines;
    double sp_lines_tol = 1e-7;
    CLI::App* spec = app.add_subcommand("spectrum", "coupling sweep, CSV per (s, chain, level)");
    add_common(spec, spec_c);
    spec->add_option("--s-min", sp_smin, "coupling scale lower end");
    spec->add_option("--s-max", sp_smax, "coupling scale upper end");
    spec->add_option("--steps", sp_steps, "grid points");
    spec->add_option("--blocks", sp_blocks, "chain truncation (doubled internally)");
    spec->add_option("--levels", sp_levels, "eigenvalues per chain");
    spec->add_option("--threads", sp_threads, "worker threads");
    spec->add_flag("--require-converged", sp_require_conv, "fail unless every level converged");
    spec->add_flag("--allow-unstable", sp_allow_unstable,
                   "continue two-photon sweeps past the collapse threshold");
    spec->add_option("--lines", sp_lines, "also write a horizontal-line report to this file");
    spec->add_option("--lines-tol", sp_lines_tol, "line detection tolerance");
    spec->callback([&] {
        rc = run_spectrum(spec_c, sp_smin, sp_smax, sp_steps, sp_blocks, sp_levels, sp_threads,
                          sp_require_conv, sp_allow_unstable, sp_lines, sp_lines_tol);
    });

    // stability
    Common stab_c;
    CLI::App* stab = app.add_subcommand("stability", "report the truncation-stability regime");
    add_common(stab, stab_c);
    stab->callback([&] { rc = run_stability(stab_c); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitBadConfig;
    } catch (const std::exception& e) {
        std::cerr << "darkrabi: " << e.what() << "\n";
        return kExitBadConfig;
    }
    return rc;
}
