#pragma once

#include <string>
#include <vector>

#include "darkrabi/model.hpp"

namespace darkrabi {

// -------------------- stability --------------------

// Whether a truncated diagonalization of the given model can converge at all.
// Single-photon coupling is harmless; two-photon coupling squeezes the field
// and the spectrum stays discrete only while sum_k g_k / omega < 1/2; three
// photons and up have no lower bound at any nonzero coupling.
enum class StabilityRegime { AlwaysStable, Stable, AtThreshold, Unstable, NeverConvergent };

const char* to_string(StabilityRegime regime);

struct StabilityReport {
    StabilityRegime regime = StabilityRegime::AlwaysStable;
    double lambda = 0.0;     // sum_k g_k / omega
    double threshold = 0.0;  // collapse threshold for photon order 2, else 0
    std::string note;

    bool ok() const {
        return regime == StabilityRegime::AlwaysStable || regime == StabilityRegime::Stable;
    }
};

StabilityReport stability_check(const ModelParams& params, double eps = 1e-12);

// -------------------- truncated eigensolve --------------------

struct ChainEigs {
    SubspaceLabel label;
    int blocks = 0;                // requested truncation; values come from 2x
    std::vector<double> values;    // lowest `levels` eigenvalues, units of omega
    std::vector<bool> converged;   // per level: |E(B) - E(2B)| < tol_conv
};

// Diagonalizes one chain at truncation B and 2B and reports the 2B values,
// flagging each level whose doubling shift stays below tol_conv.
ChainEigs diagonalize_chain(const ModelParams& params, const SubspaceLabel& label, int n_blocks,
                            int levels, double tol_conv = 1e-9);

// -------------------- coupling sweeps --------------------

struct SweepOptions {
    int blocks = 40;
    int levels = 12;
    bool allow_unstable = false;   // lets photon-order-2 sweeps cross the collapse threshold
    bool require_converged = false;
    int threads = 1;
    double tol_conv = 1e-9;
};

struct SweepPoint {
    double s = 0.0;
    std::vector<ChainEigs> chains;  // one entry per label, all_labels order
};

struct SpectrumSweep {
    ModelParams base;
    SweepOptions options;
    std::vector<SubspaceLabel> labels;
    std::vector<double> grid;       // requested s values
    std::vector<SweepPoint> points; // computed points (prefix of grid if cut)
    int cut_index = -1;             // first refused grid index, -1 when none
};

// Scales the base couplings by each grid value s in [s_min, s_max] and
// diagonalizes every chain. For photon order 2 the sweep stops at the first
// non-stable point unless allow_unstable is set. Points are distributed over
// `threads` workers by grid index, so results are deterministic.
SpectrumSweep sweep(const ModelParams& base, double s_min, double s_max, int steps,
                    const SweepOptions& options = {});

// -------------------- horizontal lines --------------------

struct HorizontalLine {
    SubspaceLabel label;
    double value = 0.0;             // units of omega
    double max_deviation = 0.0;     // worst |nearest eigenvalue - value| over the sweep
    std::vector<int> multiplicity;  // eigenvalues within tol at each computed point
};

// Coupling-independent eigenvalues: candidates are the converged values at the
// first grid point (second point when the grid starts at s = 0, where every
// chain is trivially diagonal) that stay matched within tol at every point.
std::vector<HorizontalLine> detect_horizontal(const SpectrumSweep& sweep, double tol = 1e-7);

}  // namespace darkrabi
