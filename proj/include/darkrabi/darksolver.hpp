#pragma once

#include <string>
#include <utility>
#include <vector>

#include "darkrabi/model.hpp"

namespace darkrabi {

// -------------------- states --------------------

struct Amplitude {
    int photon{0};
    QubitConfig config;
    double value{0.0};
};

// Eigenstate with bounded photon support inside one chain. Catalog states
// keep their closed-form coefficients verbatim (unnormalized); scan states
// come back unit-norm with the first nonzero amplitude made positive.
// Energies are in units of omega.
struct DarkLikeState {
    SubspaceLabel label;
    double energy{0.0};
    std::string family;
    std::vector<Amplitude> amplitudes;  // chain order: by photon, then sector index
    bool normalized{false};

    int max_photon() const;
    double norm() const;
    DarkLikeState normalized_view() const;
};

// -------------------- catalog --------------------

// Linear relation sum_k g_coeff[k] g_k + sum_k d_coeff[k] Delta_k
// + omega_coeff * omega = 0.
struct Relation {
    std::vector<double> g_coeff, d_coeff;
    double omega_coeff{0.0};

    double residual(const ModelParams& params) const;
    std::string text() const;
};

// One parameter family of exactly solvable states: constraints on
// (g, Delta, omega), the chain it lives in, and its pinned energy.
struct FamilyCondition {
    std::string id;       // "2q-even", "2q-odd-a", "2q-odd-b", "3q", "4q-pair",
                          // "4q-dark", "4q-equal-g", "nq-product"
    std::string variant;  // subfamily / role details, e.g. "active 1,2 odd-a"
    int photon_order{1};
    int subspace_i{0};
    int parity{+1};             // head-block sector
    double predicted_energy{};  // units of omega
    int degeneracy{1};
    std::vector<Relation> constraints;
    std::vector<int> active;                      // 0-based active qubits
    std::vector<std::pair<int, int>> singlets;    // 0-based spectator pairs

    SubspaceLabel label() const { return {subspace_i, parity}; }
    bool satisfied(const ModelParams& params, double tol) const;
};

// Every catalog family whose constraints hold within tol (relative to the
// parameter scale), one entry per head photon number i = 0..M-1.
std::vector<FamilyCondition> catalog_match(const ModelParams& params, double tol = 1e-9);

// Rewrites a single-photon family for the M-photon chain with head photon i:
// energy E -> E + i + M - 1 and constraint energy E -> E + M - 1. Amplitude
// denominators pick up the ladder factor sqrt((i+M)!/i!) in build_states.
FamilyCondition lift_to_multiphoton(const FamilyCondition& family, int photon_order, int i);

// Closed-form states of one matched family; the vector length equals the
// family degeneracy. Throws on violated constraints or decoupled (g = 0)
// denominators.
std::vector<DarkLikeState> build_states(const FamilyCondition& family,
                                        const ModelParams& params, double tol = 1e-9);

// -------------------- verification --------------------

struct VerifyReport {
    double residual{0.0};  // ||(H - E)psi|| / ||psi|| on the reduced chain
    double energy{0.0};    // Rayleigh quotient, units of omega
    int blocks_used{0};
    bool pass{false};
};

VerifyReport verify_state(const ModelParams& params, const DarkLikeState& state,
                          double tol = 1e-11);

// -------------------- generic scan --------------------

struct ScanCandidate {
    double energy{0.0};
    double sigma_min{0.0};
    double scale{0.0};   // largest singular value at this energy
    std::string status;  // "accepted" or "inconclusive"
};

struct ScanResult {
    std::vector<DarkLikeState> states;
    std::vector<ScanCandidate> diagnostics;
};

// Detector for bounded-support states with photon support {i, i+M} in the
// given chain, no family assumed. Fixes the top coefficients inside the
// zero-mode span of O_N, stacks the two remaining block rows into A(E), and
// scans the smallest singular value of A over the window (601-point grid by
// default, golden-section refinement, E = i+M and both block diagonals always
// tested). Accepts sigma_min < tol * ||A||; [tol, 100 tol) is flagged
// inconclusive. Empty result when O_N has no zero mode.
ScanResult generic_scan(const ModelParams& params, const SubspaceLabel& label,
                        double e_min, double e_max, double tol = 1e-10,
                        int grid_points = 601);

}  // namespace darkrabi
