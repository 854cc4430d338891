#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "darkrabi/darksolver.hpp"
#include "darkrabi/model.hpp"
#include "darkrabi/spectrum.hpp"

namespace darkrabi {

// All on-disk energies are absolute (multiplied by omega); the in-memory
// structs keep them in units of omega. Parsers reject unknown keys so a typo
// in a config fails loudly instead of silently falling back to a default.

nlohmann::json params_to_json(const ModelParams& params);
ModelParams params_from_json(const nlohmann::json& j);

nlohmann::json state_to_json(const DarkLikeState& state, double omega);
DarkLikeState state_from_json(const nlohmann::json& j, double omega);

nlohmann::json family_to_json(const FamilyCondition& family, double omega);
nlohmann::json verify_to_json(const VerifyReport& report, double omega);
nlohmann::json stability_to_json(const StabilityReport& report);
nlohmann::json line_to_json(const HorizontalLine& line, double omega);
nlohmann::json scan_diag_to_json(const ScanCandidate& diag, double omega);

// one row per (point, chain, level): s,i,parity,index,energy,converged
std::string sweep_csv(const SpectrumSweep& sweep);

// -------------------- run configuration --------------------

// {"model": {...}, "sweep": {...}, "dark": {...}}, every section optional;
// command-line flags override whatever the file provides
struct RunConfig {
    std::optional<ModelParams> model;

    std::optional<double> s_min, s_max;
    std::optional<int> steps, blocks, levels;

    std::optional<double> window_lo, window_hi;  // "window": [lo, hi]
    std::optional<int> grid;
    std::optional<double> tol;
};

RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

// -------------------- files --------------------

std::string read_file(const std::string& path);

// writes to <path>.tmp.<pid> and renames, so readers never see partial output
void atomic_write(const std::string& path, const std::string& content);

// shortest-round-trip style formatting used for CSV cells (12 significant digits)
std::string format_sig(double value);

}  // namespace darkrabi
