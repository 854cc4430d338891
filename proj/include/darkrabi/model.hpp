#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace darkrabi {

// -------------------- qubit configurations --------------------

// Spin configuration of an N-qubit register. Qubit k (1-based in all text
// output) lives in bit k-1; a set bit means "up" (sigma_z = +1).
struct QubitConfig {
    std::uint32_t bits{0};
    int n_qubits{0};

    bool up(int k) const { return (bits >> k) & 1u; }
    int sigma_z(int k) const { return up(k) ? +1 : -1; }
    int sigma_z_product() const;

    QubitConfig flipped(int k) const { return {bits ^ (1u << k), n_qubits}; }

    std::string to_string() const;  // "ud..." with qubit 1 first
    static QubitConfig from_string(const std::string& s);

    friend bool operator==(const QubitConfig& a, const QubitConfig& b) {
        return a.bits == b.bits && a.n_qubits == b.n_qubits;
    }
};

// -------------------- model parameters --------------------

// N qubits coupled to one field mode through g_k sigma_x (a^M + adag^M),
// with splittings Delta_k sigma_z and field frequency omega. All internal
// computations run in units of omega (reduced couplings/splittings); energies
// are rescaled by omega again at the output boundary.
struct ModelParams {
    int n_qubits{1};
    int photon_order{1};  // M
    double omega{1.0};
    std::vector<double> couplings;   // g_k >= 0
    std::vector<double> splittings;  // Delta_k

    void validate() const;
    std::vector<double> reduced_couplings() const;
    std::vector<double> reduced_splittings() const;

    // same model with couplings scaled by s (sweep parameter)
    ModelParams with_coupling_scale(double s) const;
};

// -------------------- parity sectors --------------------

// The two sigma_z-product sectors in the order produced by the doubling
// construction: plus(1) = [u], minus(1) = [d],
//   plus(N)  = minus(N-1) x d_N  ++  plus(N-1) x u_N,
//   minus(N) = plus(N-1)  x d_N  ++  minus(N-1) x u_N.
// Every configuration appears in exactly one sector and the list order is
// the row/column order of all block matrices built downstream.
struct ParityChainBasis {
    int n_qubits{0};
    std::vector<QubitConfig> plus, minus;

    const std::vector<QubitConfig>& sector(int sign) const;
    int sector_of(const QubitConfig& q) const;  // +1 or -1
    int index_of(const QubitConfig& q) const;   // position inside its sector

    std::vector<int> index_by_bits;   // bits -> list position
    std::vector<int> sector_by_bits;  // bits -> +1/-1
};

ParityChainBasis parity_chain_basis(int n_qubits);

// -------------------- invariant subspaces --------------------

// Chain label (i, p): i is the photon number of the head block (0 <= i < M),
// p the sigma_z-product sector of the head block. The combined parity
// operator exp(i pi adag a) * prod sigma_z has eigenvalue (-1)^i * p on the
// head; for odd M that value is shared by the whole chain.
struct SubspaceLabel {
    int i{0};
    int parity{+1};

    int r_eigenvalue() const { return (i % 2 == 0) ? parity : -parity; }

    friend bool operator==(const SubspaceLabel& a, const SubspaceLabel& b) {
        return a.i == b.i && a.parity == b.parity;
    }
};

std::vector<SubspaceLabel> all_labels(int photon_order);

// Basis groups of one chain: [(i, p), (i+M, -p), (i+2M, p), ...] as
// (photon number, sector sign) pairs.
std::vector<std::pair<int, int>> chain_sequence(const SubspaceLabel& label,
                                                int photon_order, int n_blocks);

void validate_label(const SubspaceLabel& label, int photon_order);

}  // namespace darkrabi
