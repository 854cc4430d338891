#include "darkrabi/model.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace darkrabi {

// -------------------- QubitConfig --------------------

int QubitConfig::sigma_z_product() const {
    int downs = n_qubits - std::popcount(bits & ((1u << n_qubits) - 1u));
    return (downs % 2 == 0) ? +1 : -1;
}

std::string QubitConfig::to_string() const {
    std::string s(static_cast<std::size_t>(n_qubits), 'd');
    for (int k = 0; k < n_qubits; ++k)
        if (up(k)) s[static_cast<std::size_t>(k)] = 'u';
    return s;
}

QubitConfig QubitConfig::from_string(const std::string& s) {
    if (s.empty() || s.size() > 31)
        throw std::invalid_argument("QubitConfig: string must hold 1..31 qubits");
    QubitConfig q{0, static_cast<int>(s.size())};
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (s[k] == 'u')
            q.bits |= (1u << k);
        else if (s[k] != 'd')
            throw std::invalid_argument("QubitConfig: expected only 'u'/'d', got '" + s + "'");
    }
    return q;
}

// -------------------- ModelParams --------------------

void ModelParams::validate() const {
    if (n_qubits < 1 || n_qubits > 16)
        throw std::invalid_argument("ModelParams: n_qubits must be in [1, 16]");
    if (photon_order < 1)
        throw std::invalid_argument("ModelParams: photon_order must be >= 1");
    if (!(omega > 0.0) || !std::isfinite(omega))
        throw std::invalid_argument("ModelParams: omega must be a positive real");
    if (couplings.size() != static_cast<std::size_t>(n_qubits))
        throw std::invalid_argument("ModelParams: couplings must have n_qubits entries");
    if (splittings.size() != static_cast<std::size_t>(n_qubits))
        throw std::invalid_argument("ModelParams: splittings must have n_qubits entries");
    for (double g : couplings)
        if (!(g >= 0.0) || !std::isfinite(g))
            throw std::invalid_argument("ModelParams: couplings must be non-negative reals");
    for (double d : splittings)
        if (!std::isfinite(d))
            throw std::invalid_argument("ModelParams: splittings must be finite reals");
}

std::vector<double> ModelParams::reduced_couplings() const {
    std::vector<double> out(couplings);
    for (double& g : out) g /= omega;
    return out;
}

std::vector<double> ModelParams::reduced_splittings() const {
    std::vector<double> out(splittings);
    for (double& d : out) d /= omega;
    return out;
}

ModelParams ModelParams::with_coupling_scale(double s) const {
    if (!(s >= 0.0) || !std::isfinite(s))
        throw std::invalid_argument("ModelParams: coupling scale must be >= 0");
    ModelParams out(*this);
    for (double& g : out.couplings) g *= s;
    return out;
}

// -------------------- ParityChainBasis --------------------

ParityChainBasis parity_chain_basis(int n_qubits) {
    if (n_qubits < 1 || n_qubits > 16)
        throw std::invalid_argument("parity_chain_basis: n_qubits must be in [1, 16]");

    std::vector<QubitConfig> plus{{1u, 1}}, minus{{0u, 1}};
    for (int n = 2; n <= n_qubits; ++n) {
        std::vector<QubitConfig> next_plus, next_minus;
        next_plus.reserve(plus.size() * 2);
        next_minus.reserve(minus.size() * 2);
        std::uint32_t top = 1u << (n - 1);
        for (const QubitConfig& q : minus) next_plus.push_back({q.bits, n});
        for (const QubitConfig& q : plus) next_plus.push_back({q.bits | top, n});
        for (const QubitConfig& q : plus) next_minus.push_back({q.bits, n});
        for (const QubitConfig& q : minus) next_minus.push_back({q.bits | top, n});
        plus = std::move(next_plus);
        minus = std::move(next_minus);
    }

    ParityChainBasis basis;
    basis.n_qubits = n_qubits;
    basis.plus = std::move(plus);
    basis.minus = std::move(minus);
    basis.index_by_bits.assign(1u << n_qubits, -1);
    basis.sector_by_bits.assign(1u << n_qubits, 0);
    for (std::size_t r = 0; r < basis.plus.size(); ++r) {
        basis.index_by_bits[basis.plus[r].bits] = static_cast<int>(r);
        basis.sector_by_bits[basis.plus[r].bits] = +1;
    }
    for (std::size_t r = 0; r < basis.minus.size(); ++r) {
        basis.index_by_bits[basis.minus[r].bits] = static_cast<int>(r);
        basis.sector_by_bits[basis.minus[r].bits] = -1;
    }
    return basis;
}

const std::vector<QubitConfig>& ParityChainBasis::sector(int sign) const {
    if (sign != +1 && sign != -1)
        throw std::invalid_argument("ParityChainBasis: sector sign must be +1 or -1");
    return sign > 0 ? plus : minus;
}

int ParityChainBasis::sector_of(const QubitConfig& q) const {
    if (q.n_qubits != n_qubits || q.bits >= sector_by_bits.size())
        throw std::invalid_argument("ParityChainBasis: configuration size mismatch");
    return sector_by_bits[q.bits];
}

int ParityChainBasis::index_of(const QubitConfig& q) const {
    if (q.n_qubits != n_qubits || q.bits >= index_by_bits.size())
        throw std::invalid_argument("ParityChainBasis: configuration size mismatch");
    return index_by_bits[q.bits];
}

// -------------------- subspace labels --------------------

void validate_label(const SubspaceLabel& label, int photon_order) {
    if (label.i < 0 || label.i >= photon_order)
        throw std::invalid_argument("SubspaceLabel: i must satisfy 0 <= i < photon_order");
    if (label.parity != +1 && label.parity != -1)
        throw std::invalid_argument("SubspaceLabel: parity must be +1 or -1");
}

std::vector<SubspaceLabel> all_labels(int photon_order) {
    if (photon_order < 1)
        throw std::invalid_argument("all_labels: photon_order must be >= 1");
    std::vector<SubspaceLabel> out;
    out.reserve(2 * static_cast<std::size_t>(photon_order));
    for (int i = 0; i < photon_order; ++i) {
        out.push_back({i, +1});
        out.push_back({i, -1});
    }
    return out;
}

std::vector<std::pair<int, int>> chain_sequence(const SubspaceLabel& label,
                                                int photon_order, int n_blocks) {
    validate_label(label, photon_order);
    if (n_blocks < 1)
        throw std::invalid_argument("chain_sequence: n_blocks must be >= 1");
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<std::size_t>(n_blocks));
    for (int j = 0; j < n_blocks; ++j)
        out.emplace_back(label.i + j * photon_order,
                         (j % 2 == 0) ? label.parity : -label.parity);
    return out;
}

}  // namespace darkrabi
