#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"

#include "darkrabi/blocks.hpp"

using namespace darkrabi;

namespace {

ModelParams make(int n, std::vector<double> g, std::vector<double> d, int m = 1,
                 double omega = 1.0) {
    ModelParams p;
    p.n_qubits = n;
    p.photon_order = m;
    p.omega = omega;
    p.couplings = std::move(g);
    p.splittings = std::move(d);
    return p;
}

std::vector<double> dense_eigs(const Eigen::MatrixXd& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd& v = solver.eigenvalues();
    return std::vector<double>(v.data(), v.data() + v.size());
}

}  // namespace

TEST_CASE("diagonal blocks carry photon number plus signed splittings") {
    // single qubit: sector + is [u], sector - is [d]
    const ModelParams p1 = make(1, {0.0}, {0.7});
    CHECK(diag_block(p1, {0, +1}, 0)(0) == doctest::Approx(0.7));
    CHECK(diag_block(p1, {0, +1}, 1)(0) == doctest::Approx(1.0 - 0.7));

    // two qubits, sector + order [dd, uu]
    const ModelParams p2 = make(2, {0.1, 0.1}, {0.6, 0.4});
    const Eigen::VectorXd d0 = diag_block(p2, {0, +1}, 0);
    CHECK(d0(0) == doctest::Approx(-1.0));
    CHECK(d0(1) == doctest::Approx(1.0));

    // two-photon chain, head photon 1, block 2 sits at photon 5
    const ModelParams p3 = make(2, {0.1, 0.1}, {0.0, 0.0}, 2);
    const Eigen::VectorXd d2 = diag_block(p3, {1, -1}, 2);
    CHECK(d2(0) == doctest::Approx(5.0));
    CHECK(d2(1) == doctest::Approx(5.0));
}

TEST_CASE("off-diagonal ladder factors are running products") {
    CHECK(offdiag_factor(1, 0, 0) == doctest::Approx(1.0));
    CHECK(offdiag_factor(1, 0, 3) == doctest::Approx(2.0));
    CHECK(offdiag_factor(2, 0, 0) == doctest::Approx(std::sqrt(2.0)));
    CHECK(offdiag_factor(2, 1, 0) == doctest::Approx(std::sqrt(6.0)));
    CHECK(offdiag_factor(3, 2, 1) == doctest::Approx(std::sqrt(6.0 * 7.0 * 8.0)));
    CHECK_THROWS_AS(offdiag_factor(2, 2, 0), std::invalid_argument);
    CHECK_THROWS_AS(offdiag_factor(0, 0, 0), std::invalid_argument);
}

TEST_CASE("assembled chains are symmetric and apply() matches dense()") {
    const ModelParams p = make(3, {0.8, 0.5, 0.3}, {0.4, -0.2, 0.9}, 2);
    const BlockChain chain = assemble_chain(p, {1, -1}, 5);
    CHECK(chain.dim() == 20);
    CHECK(chain.block_dim == 4);
    CHECK(chain.photon_of_block(2) == 5);
    CHECK(chain.sector_of_block(0) == -1);
    CHECK(chain.sector_of_block(1) == +1);

    const Eigen::MatrixXd h = chain.dense();
    CHECK((h - h.transpose()).cwiseAbs().maxCoeff() == 0.0);

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::VectorXd x(chain.dim());
    for (int r = 0; r < chain.dim(); ++r) x(r) = u(rng);
    CHECK((chain.apply(x) - h * x).norm() <= 1e-12 * x.norm());

    CHECK_THROWS_AS(chain.apply(Eigen::VectorXd::Zero(3)), std::invalid_argument);
    CHECK_THROWS_AS(assemble_chain(p, {1, -1}, 0), std::invalid_argument);
}

TEST_CASE("decoupled single qubit gives the bare ladder") {
    const ModelParams p = make(1, {0.0}, {0.3});
    const BlockChain chain = assemble_chain(p, {0, +1}, 3);
    const std::vector<double> eigs = dense_eigs(chain.dense());
    REQUIRE(eigs.size() == 3);
    CHECK(eigs[0] == doctest::Approx(0.3));
    CHECK(eigs[1] == doctest::Approx(0.7));
    CHECK(eigs[2] == doctest::Approx(2.3));

    const std::vector<double> oracle = dense_eigs(dense_oracle(p, 1));
    REQUIRE(oracle.size() == 4);
    CHECK(oracle[0] == doctest::Approx(-0.3));
    CHECK(oracle[1] == doctest::Approx(0.3));
    CHECK(oracle[2] == doctest::Approx(0.7));
    CHECK(oracle[3] == doctest::Approx(1.3));
}

TEST_CASE("chain union reproduces the dense oracle spectrum") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> ug(0.0, 1.0), ud(-1.0, 1.0);
    for (int trial = 0; trial < 8; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 3);
        const int m = 1 + static_cast<int>(rng() % 3);
        const int cutoff = m - 1 + static_cast<int>(rng() % 8);
        ModelParams p = make(n, {}, {}, m);
        p.couplings.resize(static_cast<std::size_t>(n));
        p.splittings.resize(static_cast<std::size_t>(n));
        for (double& g : p.couplings) g = ug(rng);
        for (double& d : p.splittings) d = ud(rng);

        const std::vector<double> a = chain_union_spectrum(p, cutoff);
        const std::vector<double> b = dense_eigs(dense_oracle(p, cutoff));
        REQUIRE(a.size() == b.size());
        for (std::size_t k = 0; k < a.size(); ++k)
            CHECK(a[k] == doctest::Approx(b[k]).epsilon(1e-10));
    }
    CHECK_THROWS_AS(chain_union_spectrum(make(1, {0.1}, {0.2}, 3), 1),
                    std::invalid_argument);
}

TEST_CASE("omega only rescales: reduced chain equals the omega=1 chain of g/w, d/w") {
    const ModelParams scaled = make(2, {0.6, 0.4}, {1.0, -0.5}, 2, 2.0);
    const ModelParams reduced = make(2, {0.3, 0.2}, {0.5, -0.25}, 2, 1.0);
    const Eigen::MatrixXd a = assemble_chain(scaled, {1, +1}, 4).dense();
    const Eigen::MatrixXd b = assemble_chain(reduced, {1, +1}, 4).dense();
    CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("dense oracle guards its dimension") {
    const ModelParams p = make(4, {0.1, 0.1, 0.1, 0.1}, {0.0, 0.0, 0.0, 0.0});
    CHECK_THROWS_AS(dense_oracle(p, 5000), std::invalid_argument);
    CHECK_THROWS_AS(dense_oracle(p, 100, 500), std::invalid_argument);
    CHECK(dense_oracle(p, 100).rows() == 16 * 101);
}
