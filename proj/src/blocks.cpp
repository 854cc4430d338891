#include "darkrabi/blocks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "darkrabi/omatrix.hpp"

namespace darkrabi {

Eigen::VectorXd diag_block(const ModelParams& params, const SubspaceLabel& label, int j) {
    params.validate();
    validate_label(label, params.photon_order);
    if (j < 0) throw std::invalid_argument("diag_block: block index must be >= 0");

    const ParityChainBasis basis = parity_chain_basis(params.n_qubits);
    const int sector = (j % 2 == 0) ? label.parity : -label.parity;
    const std::vector<QubitConfig>& configs = basis.sector(sector);
    const std::vector<double> delta = params.reduced_splittings();

    Eigen::VectorXd out(static_cast<Eigen::Index>(configs.size()));
    const double photon = static_cast<double>(label.i) +
                          static_cast<double>(j) * params.photon_order;
    for (std::size_t r = 0; r < configs.size(); ++r) {
        double e = photon;
        for (int k = 0; k < params.n_qubits; ++k)
            e += delta[static_cast<std::size_t>(k)] * configs[r].sigma_z(k);
        out(static_cast<Eigen::Index>(r)) = e;
    }
    return out;
}

double offdiag_factor(int photon_order, int i, int j) {
    if (photon_order < 1 || i < 0 || i >= photon_order || j < 0)
        throw std::invalid_argument("offdiag_factor: need M >= 1, 0 <= i < M, j >= 0");
    double product = 1.0;
    const double base = static_cast<double>(i) + static_cast<double>(j) * photon_order;
    for (int t = 1; t <= photon_order; ++t) {
        const double term = base + t;
        if (product > std::numeric_limits<double>::max() / term)
            throw std::runtime_error("offdiag_factor: photon ladder product overflows double");
        product *= term;
    }
    return std::sqrt(product);
}

BlockChain assemble_chain(const ModelParams& params, const SubspaceLabel& label, int n_blocks) {
    params.validate();
    validate_label(label, params.photon_order);
    if (n_blocks < 1)
        throw std::invalid_argument("assemble_chain: n_blocks must be >= 1");

    BlockChain chain;
    chain.params = params;
    chain.label = label;
    chain.n_blocks = n_blocks;
    chain.block_dim = 1 << (params.n_qubits - 1);
    chain.diag.reserve(static_cast<std::size_t>(n_blocks));
    for (int j = 0; j < n_blocks; ++j) chain.diag.push_back(diag_block(params, label, j));
    chain.factors.reserve(static_cast<std::size_t>(n_blocks - 1));
    for (int j = 0; j + 1 < n_blocks; ++j)
        chain.factors.push_back(offdiag_factor(params.photon_order, label.i, j));
    chain.core = coupling_matrix(params.reduced_couplings());
    return chain;
}

Eigen::MatrixXd BlockChain::dense() const {
    const Eigen::Index d = block_dim;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim(), dim());
    for (int j = 0; j < n_blocks; ++j)
        h.block(j * d, j * d, d, d).diagonal() = diag[static_cast<std::size_t>(j)];
    for (int j = 0; j + 1 < n_blocks; ++j) {
        h.block((j + 1) * d, j * d, d, d) = factors[static_cast<std::size_t>(j)] * core;
        h.block(j * d, (j + 1) * d, d, d) = factors[static_cast<std::size_t>(j)] * core;
    }
    return h;
}

Eigen::VectorXd BlockChain::apply(const Eigen::VectorXd& x) const {
    if (x.size() != dim())
        throw std::invalid_argument("BlockChain: vector length does not match chain dimension");
    const Eigen::Index d = block_dim;
    Eigen::VectorXd y(x.size());
    for (int j = 0; j < n_blocks; ++j) {
        Eigen::VectorXd seg =
            diag[static_cast<std::size_t>(j)].cwiseProduct(x.segment(j * d, d));
        if (j > 0) seg += factors[static_cast<std::size_t>(j - 1)] * (core * x.segment((j - 1) * d, d));
        if (j + 1 < n_blocks)
            seg += factors[static_cast<std::size_t>(j)] * (core * x.segment((j + 1) * d, d));
        y.segment(j * d, d) = seg;
    }
    return y;
}

Eigen::MatrixXd dense_oracle(const ModelParams& params, int cutoff, std::size_t dim_cap) {
    params.validate();
    if (cutoff < 0) throw std::invalid_argument("dense_oracle: cutoff must be >= 0");
    const std::size_t qdim = std::size_t{1} << params.n_qubits;
    const std::size_t dim = qdim * (static_cast<std::size_t>(cutoff) + 1);
    if (dim > dim_cap)
        throw std::invalid_argument("dense_oracle: dimension exceeds cap, raise dim_cap explicitly");

    const std::vector<double> g = params.reduced_couplings();
    const std::vector<double> delta = params.reduced_splittings();
    const int m = params.photon_order;

    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));
    auto idx = [&](int n, std::uint32_t bits) {
        return static_cast<Eigen::Index>(static_cast<std::size_t>(n) * qdim + bits);
    };
    for (int n = 0; n <= cutoff; ++n) {
        for (std::uint32_t bits = 0; bits < qdim; ++bits) {
            double e = n;
            for (int k = 0; k < params.n_qubits; ++k)
                e += delta[static_cast<std::size_t>(k)] * (((bits >> k) & 1u) ? +1 : -1);
            h(idx(n, bits), idx(n, bits)) = e;
        }
        if (n + m <= cutoff) {
            double product = 1.0;
            for (int t = 1; t <= m; ++t) product *= n + t;
            const double ladder = std::sqrt(product);
            for (std::uint32_t bits = 0; bits < qdim; ++bits)
                for (int k = 0; k < params.n_qubits; ++k) {
                    const double v = g[static_cast<std::size_t>(k)] * ladder;
                    h(idx(n + m, bits ^ (1u << k)), idx(n, bits)) += v;
                    h(idx(n, bits), idx(n + m, bits ^ (1u << k))) += v;
                }
        }
    }
    return h;
}

std::vector<double> chain_union_spectrum(const ModelParams& params, int cutoff) {
    params.validate();
    if (cutoff < params.photon_order - 1)
        throw std::invalid_argument("chain_union_spectrum: cutoff must be >= photon_order - 1");

    std::vector<double> eigs;
    for (const SubspaceLabel& label : all_labels(params.photon_order)) {
        const int blocks = (cutoff - label.i) / params.photon_order + 1;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
            assemble_chain(params, label, blocks).dense(), Eigen::EigenvaluesOnly);
        const Eigen::VectorXd& v = solver.eigenvalues();
        eigs.insert(eigs.end(), v.data(), v.data() + v.size());
    }
    std::sort(eigs.begin(), eigs.end());
    return eigs;
}

}  // namespace darkrabi
