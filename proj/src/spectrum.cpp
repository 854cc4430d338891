#include "darkrabi/spectrum.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "darkrabi/blocks.hpp"

namespace darkrabi {

// -------------------- stability --------------------

const char* to_string(StabilityRegime regime) {
    switch (regime) {
        case StabilityRegime::AlwaysStable: return "always-stable";
        case StabilityRegime::Stable: return "stable";
        case StabilityRegime::AtThreshold: return "at-threshold";
        case StabilityRegime::Unstable: return "unstable";
        case StabilityRegime::NeverConvergent: return "never-convergent";
    }
    return "unknown";
}

StabilityReport stability_check(const ModelParams& params, double eps) {
    params.validate();
    if (!(eps >= 0.0)) throw std::invalid_argument("stability_check: eps must be >= 0");

    StabilityReport rep;
    for (double g : params.couplings) rep.lambda += g / params.omega;

    if (params.photon_order == 1) {
        rep.regime = StabilityRegime::AlwaysStable;
        rep.note = "single-photon coupling keeps the spectrum discrete at any strength";
    } else if (params.photon_order == 2) {
        rep.threshold = 0.5;
        if (rep.lambda < 0.5 - eps) {
            rep.regime = StabilityRegime::Stable;
        } else if (rep.lambda <= 0.5 + eps) {
            rep.regime = StabilityRegime::AtThreshold;
            rep.note = "total two-photon coupling sits on the collapse threshold";
        } else {
            rep.regime = StabilityRegime::Unstable;
            rep.note = "total two-photon coupling exceeds omega/2; spectrum is unbounded below";
        }
    } else {
        if (rep.lambda > 0.0) {
            rep.regime = StabilityRegime::NeverConvergent;
            rep.note = "photon order >= 3 has no convergent truncation at nonzero coupling";
        } else {
            rep.regime = StabilityRegime::Stable;
            rep.note = "all couplings vanish; the model is diagonal";
        }
    }
    return rep;
}

// -------------------- truncated eigensolve --------------------

namespace {

std::vector<double> lowest_eigs(const ModelParams& params, const SubspaceLabel& label,
                                int n_blocks, int levels) {
    const BlockChain chain = assemble_chain(params, label, n_blocks);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(chain.dense(),
                                                          Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("diagonalize_chain: eigensolver failed to converge");
    const Eigen::VectorXd& ev = solver.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + levels);
}

}  // namespace

ChainEigs diagonalize_chain(const ModelParams& params, const SubspaceLabel& label, int n_blocks,
                            int levels, double tol_conv) {
    params.validate();
    validate_label(label, params.photon_order);
    if (n_blocks < 1) throw std::invalid_argument("diagonalize_chain: need at least 1 block");
    if (!(tol_conv > 0.0)) throw std::invalid_argument("diagonalize_chain: tol_conv must be > 0");
    const int dim = (1 << (params.n_qubits - 1)) * n_blocks;
    if (levels < 1 || levels > dim)
        throw std::invalid_argument("diagonalize_chain: levels must be in [1, blocks * 2^(N-1)]");

    const std::vector<double> coarse = lowest_eigs(params, label, n_blocks, levels);
    const std::vector<double> fine = lowest_eigs(params, label, 2 * n_blocks, levels);

    ChainEigs out;
    out.label = label;
    out.blocks = n_blocks;
    out.values = fine;
    out.converged.resize(static_cast<std::size_t>(levels));
    for (int k = 0; k < levels; ++k)
        out.converged[static_cast<std::size_t>(k)] =
            std::abs(coarse[static_cast<std::size_t>(k)] - fine[static_cast<std::size_t>(k)]) <
            tol_conv;
    return out;
}

// -------------------- coupling sweeps --------------------

SpectrumSweep sweep(const ModelParams& base, double s_min, double s_max, int steps,
                    const SweepOptions& options) {
    base.validate();
    if (steps < 2) throw std::invalid_argument("sweep: need at least 2 grid points");
    if (!(s_min < s_max)) throw std::invalid_argument("sweep: degenerate grid, s_min must be < s_max");
    if (s_min < 0.0) throw std::invalid_argument("sweep: coupling scale must be >= 0");
    if (options.threads < 1) throw std::invalid_argument("sweep: threads must be >= 1");

    SpectrumSweep sw;
    sw.base = base;
    sw.options = options;
    sw.labels = all_labels(base.photon_order);
    sw.grid.resize(static_cast<std::size_t>(steps));
    for (int k = 0; k < steps; ++k)
        sw.grid[static_cast<std::size_t>(k)] = s_min + k * (s_max - s_min) / (steps - 1);

    int n_compute = steps;
    if (base.photon_order == 2 && !options.allow_unstable) {
        for (int k = 0; k < steps; ++k) {
            const StabilityReport rep =
                stability_check(base.with_coupling_scale(sw.grid[static_cast<std::size_t>(k)]));
            if (!rep.ok()) {
                sw.cut_index = k;
                n_compute = k;
                break;
            }
        }
    }

    sw.points.resize(static_cast<std::size_t>(n_compute));
    const int workers =
        std::max(1, std::min({options.threads, n_compute, 64}));
    std::atomic<int> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;

    auto run = [&]() {
        for (;;) {
            const int k = next.fetch_add(1);
            if (k >= n_compute) return;
            try {
                const double s = sw.grid[static_cast<std::size_t>(k)];
                const ModelParams scaled = base.with_coupling_scale(s);
                SweepPoint pt;
                pt.s = s;
                pt.chains.reserve(sw.labels.size());
                for (const SubspaceLabel& label : sw.labels)
                    pt.chains.push_back(diagonalize_chain(scaled, label, options.blocks,
                                                          options.levels, options.tol_conv));
                sw.points[static_cast<std::size_t>(k)] = std::move(pt);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    if (workers == 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int t = 0; t < workers; ++t) pool.emplace_back(run);
        for (std::thread& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    if (options.require_converged)
        for (const SweepPoint& pt : sw.points)
            for (const ChainEigs& ce : pt.chains)
                for (bool ok : ce.converged)
                    if (!ok)
                        throw std::runtime_error(
                            "sweep: unconverged level under require_converged; raise blocks");
    return sw;
}

// -------------------- horizontal lines --------------------

std::vector<HorizontalLine> detect_horizontal(const SpectrumSweep& sw, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("detect_horizontal: tol must be > 0");
    if (sw.points.size() < 2)
        throw std::invalid_argument("detect_horizontal: need at least 2 computed points");

    // s = 0 is degenerate (every chain is diagonal there), so seed from the
    // second point when the grid starts at zero
    const std::size_t seed = (sw.points.front().s == 0.0) ? 1 : 0;

    std::vector<HorizontalLine> lines;
    for (std::size_t li = 0; li < sw.labels.size(); ++li) {
        const ChainEigs& seed_chain = sw.points[seed].chains[li];
        std::vector<double> candidates;
        for (std::size_t k = 0; k < seed_chain.values.size(); ++k) {
            if (!seed_chain.converged[k]) continue;
            if (!candidates.empty() && seed_chain.values[k] - candidates.back() <= tol) continue;
            candidates.push_back(seed_chain.values[k]);
        }

        for (double value : candidates) {
            HorizontalLine line;
            line.label = sw.labels[li];
            line.value = value;
            bool everywhere = true;
            for (const SweepPoint& pt : sw.points) {
                const std::vector<double>& ev = pt.chains[li].values;
                double best = std::numeric_limits<double>::infinity();
                int mult = 0;
                for (double e : ev) {
                    best = std::min(best, std::abs(e - value));
                    if (std::abs(e - value) <= tol) ++mult;
                }
                if (best > tol) {
                    everywhere = false;
                    break;
                }
                line.max_deviation = std::max(line.max_deviation, best);
                line.multiplicity.push_back(mult);
            }
            if (everywhere) lines.push_back(std::move(line));
        }
    }
    return lines;
}

}  // namespace darkrabi
