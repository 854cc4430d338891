#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "darkrabi/model.hpp"

using namespace darkrabi;

namespace {

std::vector<std::string> strings(const std::vector<QubitConfig>& configs) {
    std::vector<std::string> out;
    for (const QubitConfig& q : configs) out.push_back(q.to_string());
    return out;
}

}  // namespace

TEST_CASE("QubitConfig string round trip and sigma_z bookkeeping") {
    const QubitConfig q = QubitConfig::from_string("udd");
    CHECK(q.n_qubits == 3);
    CHECK(q.up(0));
    CHECK_FALSE(q.up(1));
    CHECK(q.sigma_z(0) == +1);
    CHECK(q.sigma_z(2) == -1);
    CHECK(q.to_string() == "udd");
    CHECK(q.sigma_z_product() == +1);  // two downs

    CHECK(QubitConfig::from_string("uu").sigma_z_product() == +1);
    CHECK(QubitConfig::from_string("ud").sigma_z_product() == -1);
    CHECK(QubitConfig::from_string("ddd").sigma_z_product() == -1);

    CHECK(q.flipped(1).to_string() == "uud");
    CHECK_THROWS_AS(QubitConfig::from_string("u x"), std::invalid_argument);
    CHECK_THROWS_AS(QubitConfig::from_string(""), std::invalid_argument);
}

TEST_CASE("parity sectors for small N match the doubling construction") {
    const ParityChainBasis b1 = parity_chain_basis(1);
    CHECK(strings(b1.plus) == std::vector<std::string>{"u"});
    CHECK(strings(b1.minus) == std::vector<std::string>{"d"});

    const ParityChainBasis b2 = parity_chain_basis(2);
    CHECK(strings(b2.plus) == std::vector<std::string>{"dd", "uu"});
    CHECK(strings(b2.minus) == std::vector<std::string>{"ud", "du"});

    const ParityChainBasis b3 = parity_chain_basis(3);
    CHECK(strings(b3.plus) == std::vector<std::string>{"udd", "dud", "ddu", "uuu"});
    CHECK(strings(b3.minus) == std::vector<std::string>{"ddd", "uud", "udu", "duu"});
}

TEST_CASE("parity sectors partition all configurations consistently") {
    for (int n = 1; n <= 6; ++n) {
        const ParityChainBasis basis = parity_chain_basis(n);
        const std::size_t half = std::size_t{1} << (n - 1);
        REQUIRE(basis.plus.size() == half);
        REQUIRE(basis.minus.size() == half);
        for (int sign : {+1, -1}) {
            const auto& list = basis.sector(sign);
            for (std::size_t r = 0; r < list.size(); ++r) {
                CHECK(list[r].sigma_z_product() == sign);
                CHECK(basis.sector_of(list[r]) == sign);
                CHECK(basis.index_of(list[r]) == static_cast<int>(r));
            }
        }
    }
}

TEST_CASE("doubling recursion relates consecutive sector lists") {
    // plus(N) = minus(N-1) x d  ++  plus(N-1) x u, and swapped for minus(N)
    for (int n = 2; n <= 5; ++n) {
        const ParityChainBasis big = parity_chain_basis(n);
        const ParityChainBasis small = parity_chain_basis(n - 1);
        const std::size_t half = small.plus.size();
        for (std::size_t r = 0; r < half; ++r) {
            CHECK(big.plus[r].to_string() == small.minus[r].to_string() + "d");
            CHECK(big.plus[half + r].to_string() == small.plus[r].to_string() + "u");
            CHECK(big.minus[r].to_string() == small.plus[r].to_string() + "d");
            CHECK(big.minus[half + r].to_string() == small.minus[r].to_string() + "u");
        }
    }
}

TEST_CASE("ModelParams validation") {
    ModelParams p;
    p.n_qubits = 2;
    p.couplings = {0.3, 0.2};
    p.splittings = {0.5, -0.1};
    CHECK_NOTHROW(p.validate());

    ModelParams bad = p;
    bad.couplings = {0.3};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = p;
    bad.couplings = {0.3, -0.2};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = p;
    bad.omega = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = p;
    bad.photon_order = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = p;
    bad.n_qubits = 17;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("reduced parameters divide by omega and scaling multiplies couplings") {
    ModelParams p;
    p.n_qubits = 2;
    p.omega = 2.0;
    p.couplings = {0.6, 0.4};
    p.splittings = {1.0, -0.5};
    CHECK(p.reduced_couplings() == std::vector<double>{0.3, 0.2});
    CHECK(p.reduced_splittings() == std::vector<double>{0.5, -0.25});

    const ModelParams q = p.with_coupling_scale(0.5);
    CHECK(q.couplings == std::vector<double>{0.3, 0.2});
    CHECK(q.splittings == p.splittings);
    CHECK_THROWS_AS(p.with_coupling_scale(-1.0), std::invalid_argument);
}

TEST_CASE("subspace labels enumerate 2M chains and alternate sectors") {
    const std::vector<SubspaceLabel> labels = all_labels(2);
    REQUIRE(labels.size() == 4);
    CHECK(labels[0] == SubspaceLabel{0, +1});
    CHECK(labels[1] == SubspaceLabel{0, -1});
    CHECK(labels[2] == SubspaceLabel{1, +1});
    CHECK(labels[3] == SubspaceLabel{1, -1});

    const auto seq = chain_sequence({1, -1}, 2, 3);
    REQUIRE(seq.size() == 3);
    CHECK(seq[0] == std::pair<int, int>{1, -1});
    CHECK(seq[1] == std::pair<int, int>{3, +1});
    CHECK(seq[2] == std::pair<int, int>{5, -1});

    CHECK(SubspaceLabel{0, +1}.r_eigenvalue() == +1);
    CHECK(SubspaceLabel{1, +1}.r_eigenvalue() == -1);
    CHECK(SubspaceLabel{1, -1}.r_eigenvalue() == +1);
    CHECK(SubspaceLabel{2, -1}.r_eigenvalue() == -1);

    CHECK_THROWS_AS(validate_label({2, +1}, 2), std::invalid_argument);
    CHECK_THROWS_AS(validate_label({0, 0}, 1), std::invalid_argument);
    CHECK_THROWS_AS(chain_sequence({0, +1}, 1, 0), std::invalid_argument);
}
