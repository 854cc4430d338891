#include "darkrabi/serialize.hpp"

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace darkrabi {

using nlohmann::json;

namespace {

void require_object(const json& j, const std::string& what) {
    if (!j.is_object()) throw std::invalid_argument(what + ": expected a JSON object");
}

void reject_unknown(const json& j, const std::set<std::string>& known,
                    const std::string& what) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key()))
            throw std::invalid_argument(what + ": unknown key '" + it.key() + "'");
}

char parity_char(int parity) { return parity > 0 ? '+' : '-'; }

int parity_from(const json& j, const std::string& what) {
    if (!j.is_string()) throw std::invalid_argument(what + ": parity must be \"+\" or \"-\"");
    const std::string s = j.get<std::string>();
    if (s == "+") return +1;
    if (s == "-") return -1;
    throw std::invalid_argument(what + ": parity must be \"+\" or \"-\"");
}

}  // namespace

// -------------------- model params --------------------

json params_to_json(const ModelParams& params) {
    return json{{"n_qubits", params.n_qubits},
                {"photon_order", params.photon_order},
                {"omega", params.omega},
                {"couplings", params.couplings},
                {"splittings", params.splittings}};
}

ModelParams params_from_json(const json& j) {
    require_object(j, "model");
    reject_unknown(j, {"n_qubits", "photon_order", "omega", "couplings", "splittings"}, "model");
    for (const char* key : {"n_qubits", "couplings", "splittings"})
        if (!j.contains(key))
            throw std::invalid_argument(std::string("model: missing key '") + key + "'");

    ModelParams p;
    p.n_qubits = j.at("n_qubits").get<int>();
    p.photon_order = j.value("photon_order", 1);
    p.omega = j.value("omega", 1.0);
    p.couplings = j.at("couplings").get<std::vector<double>>();
    p.splittings = j.at("splittings").get<std::vector<double>>();
    p.validate();
    return p;
}

// -------------------- dark-like states --------------------

json state_to_json(const DarkLikeState& state, double omega) {
    json amps = json::array();
    for (const Amplitude& a : state.amplitudes)
        amps.push_back(
            {{"photon", a.photon}, {"qubits", a.config.to_string()}, {"value", a.value}});
    return json{{"subspace",
                 {{"i", state.label.i}, {"parity", std::string(1, parity_char(state.label.parity))}}},
                {"energy", state.energy * omega},
                {"family", state.family},
                {"max_photon", state.max_photon()},
                {"normalized", state.normalized},
                {"amplitudes", std::move(amps)}};
}

DarkLikeState state_from_json(const json& j, double omega) {
    require_object(j, "state");
    reject_unknown(j, {"subspace", "energy", "family", "max_photon", "normalized", "amplitudes"},
                   "state");
    for (const char* key : {"subspace", "energy", "amplitudes"})
        if (!j.contains(key))
            throw std::invalid_argument(std::string("state: missing key '") + key + "'");
    if (!(omega > 0.0)) throw std::invalid_argument("state: omega must be > 0");

    const json& sub = j.at("subspace");
    require_object(sub, "state.subspace");
    reject_unknown(sub, {"i", "parity"}, "state.subspace");

    DarkLikeState st;
    st.label.i = sub.at("i").get<int>();
    st.label.parity = parity_from(sub.at("parity"), "state.subspace");
    st.energy = j.at("energy").get<double>() / omega;
    st.family = j.value("family", std::string());
    st.normalized = j.value("normalized", false);

    if (!j.at("amplitudes").is_array())
        throw std::invalid_argument("state: amplitudes must be an array");
    for (const json& a : j.at("amplitudes")) {
        require_object(a, "state.amplitudes");
        reject_unknown(a, {"photon", "qubits", "value"}, "state.amplitudes");
        for (const char* key : {"photon", "qubits", "value"})
            if (!a.contains(key))
                throw std::invalid_argument(std::string("state.amplitudes: missing key '") + key +
                                            "'");
        st.amplitudes.push_back({a.at("photon").get<int>(),
                                 QubitConfig::from_string(a.at("qubits").get<std::string>()),
                                 a.at("value").get<double>()});
    }
    if (st.amplitudes.empty()) throw std::invalid_argument("state: amplitudes must be non-empty");
    const int n = st.amplitudes.front().config.n_qubits;
    for (const Amplitude& a : st.amplitudes)
        if (a.config.n_qubits != n)
            throw std::invalid_argument("state: amplitudes mix different qubit counts");
    return st;
}

// -------------------- reports --------------------

json family_to_json(const FamilyCondition& family, double omega) {
    json constraints = json::array();
    for (const Relation& rel : family.constraints) constraints.push_back(rel.text());
    json active = json::array();
    for (int a : family.active) active.push_back(a + 1);
    json singlets = json::array();
    for (auto [c, d] : family.singlets) singlets.push_back(json::array({c + 1, d + 1}));
    return json{{"id", family.id},
                {"variant", family.variant},
                {"photon_order", family.photon_order},
                {"subspace", {{"i", family.subspace_i},
                              {"parity", std::string(1, parity_char(family.parity))}}},
                {"energy", family.predicted_energy * omega},
                {"degeneracy", family.degeneracy},
                {"constraints", std::move(constraints)},
                {"active", std::move(active)},
                {"singlets", std::move(singlets)}};
}

json verify_to_json(const VerifyReport& report, double omega) {
    return json{{"residual", report.residual},
                {"energy", report.energy * omega},
                {"blocks_used", report.blocks_used},
                {"pass", report.pass}};
}

json stability_to_json(const StabilityReport& report) {
    return json{{"regime", to_string(report.regime)},
                {"lambda", report.lambda},
                {"threshold", report.threshold},
                {"ok", report.ok()},
                {"note", report.note}};
}

json line_to_json(const HorizontalLine& line, double omega) {
    return json{{"subspace", {{"i", line.label.i},
                              {"parity", std::string(1, parity_char(line.label.parity))}}},
                {"energy", line.value * omega},
                {"max_deviation", line.max_deviation * omega},
                {"multiplicity", line.multiplicity}};
}

json scan_diag_to_json(const ScanCandidate& diag, double omega) {
    return json{{"energy", diag.energy * omega},
                {"sigma_min", diag.sigma_min},
                {"sigma_max", diag.scale},
                {"status", diag.status}};
}

// -------------------- sweep CSV --------------------

std::string format_sig(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

std::string sweep_csv(const SpectrumSweep& sweep) {
    std::string out = "s,i,parity,index,energy,converged\n";
    for (const SweepPoint& pt : sweep.points)
        for (const ChainEigs& chain : pt.chains)
            for (std::size_t k = 0; k < chain.values.size(); ++k) {
                out += format_sig(pt.s);
                out += ',';
                out += std::to_string(chain.label.i);
                out += ',';
                out += parity_char(chain.label.parity);
                out += ',';
                out += std::to_string(k);
                out += ',';
                out += format_sig(chain.values[k] * sweep.base.omega);
                out += ',';
                out += chain.converged[k] ? '1' : '0';
                out += '\n';
            }
    return out;
}

// -------------------- run configuration --------------------

RunConfig config_from_json(const json& j) {
    require_object(j, "config");
    reject_unknown(j, {"model", "sweep", "dark"}, "config");

    RunConfig cfg;
    if (j.contains("model")) cfg.model = params_from_json(j.at("model"));

    if (j.contains("sweep")) {
        const json& s = j.at("sweep");
        require_object(s, "config.sweep");
        reject_unknown(s, {"s_min", "s_max", "steps", "blocks", "levels"}, "config.sweep");
        if (s.contains("s_min")) cfg.s_min = s.at("s_min").get<double>();
        if (s.contains("s_max")) cfg.s_max = s.at("s_max").get<double>();
        if (s.contains("steps")) cfg.steps = s.at("steps").get<int>();
        if (s.contains("blocks")) cfg.blocks = s.at("blocks").get<int>();
        if (s.contains("levels")) cfg.levels = s.at("levels").get<int>();
    }

    if (j.contains("dark")) {
        const json& d = j.at("dark");
        require_object(d, "config.dark");
        reject_unknown(d, {"window", "grid", "tol"}, "config.dark");
        if (d.contains("window")) {
            const json& w = d.at("window");
            if (!w.is_array() || w.size() != 2)
                throw std::invalid_argument("config.dark: window must be [lo, hi]");
            cfg.window_lo = w.at(0).get<double>();
            cfg.window_hi = w.at(1).get<double>();
        }
        if (d.contains("grid")) cfg.grid = d.at("grid").get<int>();
        if (d.contains("tol")) cfg.tol = d.at("tol").get<double>();
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("config: " + path + ": " + e.what());
    }
    return config_from_json(j);
}

// -------------------- files --------------------

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_file: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("atomic_write: cannot open " + tmp);
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("atomic_write: short write to " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw std::runtime_error("atomic_write: rename to " + path + " failed: " + ec.message());
    }
}

}  // namespace darkrabi
