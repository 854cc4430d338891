#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "darkrabi/model.hpp"

namespace darkrabi {

// Block-tridiagonal form of one invariant chain, in units of omega. Block j
// spans photon number i + j*M in the sector p*(-1)^j with the configuration
// order of ParityChainBasis. Diagonal entries are (i + j*M) + sum_k Delta_k
// z_k(q); every off-diagonal block is factor[j] * core with the shared,
// sector-independent coupling core O_N.
struct BlockChain {
    ModelParams params;
    SubspaceLabel label;
    int n_blocks{0};
    int block_dim{0};
    std::vector<Eigen::VectorXd> diag;
    std::vector<double> factors;  // w_j between blocks j and j+1
    Eigen::MatrixXd core;

    int photon_of_block(int j) const { return label.i + j * params.photon_order; }
    int sector_of_block(int j) const { return (j % 2 == 0) ? label.parity : -label.parity; }
    int dim() const { return n_blocks * block_dim; }

    Eigen::MatrixXd dense() const;
    Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
};

// Diagonal of block j as a vector over the block's sector list.
Eigen::VectorXd diag_block(const ModelParams& params, const SubspaceLabel& label, int j);

// w_j = sqrt((i+jM+1)(i+jM+2)...(i+(j+1)M)), evaluated as a running product
// of at most M integer factors (never as a ratio of factorials).
double offdiag_factor(int photon_order, int i, int j);

BlockChain assemble_chain(const ModelParams& params, const SubspaceLabel& label, int n_blocks);

// Direct tensor-product Hamiltonian with a photon cutoff, in units of omega.
// Basis index = photon * 2^N + bits. Used as the truncation-matched oracle
// for the chain decomposition.
Eigen::MatrixXd dense_oracle(const ModelParams& params, int cutoff,
                             std::size_t dim_cap = 20000);

// Sorted union of all 2M chain spectra with per-chain block counts chosen so
// that the union covers exactly the photon numbers 0..cutoff.
std::vector<double> chain_union_spectrum(const ModelParams& params, int cutoff);

}  // namespace darkrabi
