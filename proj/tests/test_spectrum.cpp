#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"

#include "darkrabi/spectrum.hpp"

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

}  // namespace

TEST_CASE("stability regimes by photon order") {
    CHECK(stability_check(make(2, {5.0, 5.0}, {0.3, 0.4})).regime ==
          StabilityRegime::AlwaysStable);

    SUBCASE("two-photon threshold at half omega") {
        CHECK(stability_check(make(2, {0.2, 0.2}, {0.3, 0.4}, 2)).regime ==
              StabilityRegime::Stable);
        const StabilityReport at = stability_check(make(2, {0.25, 0.25}, {0.3, 0.4}, 2));
        CHECK(at.regime == StabilityRegime::AtThreshold);
        CHECK(at.lambda == doctest::Approx(0.5));
        CHECK(at.threshold == 0.5);
        CHECK_FALSE(at.ok());
        const StabilityReport un = stability_check(make(2, {0.3, 0.3}, {0.3, 0.4}, 2));
        CHECK(un.regime == StabilityRegime::Unstable);
        CHECK_FALSE(un.ok());

        // the tolerance band is tight around the threshold
        CHECK(stability_check(make(1, {0.5 + 5e-13}, {0.3}, 2)).regime ==
              StabilityRegime::AtThreshold);
        CHECK(stability_check(make(1, {0.5 + 2e-12}, {0.3}, 2)).regime ==
              StabilityRegime::Unstable);
        CHECK(stability_check(make(1, {0.5 - 2e-12}, {0.3}, 2)).regime ==
              StabilityRegime::Stable);
    }

    SUBCASE("lambda is measured in units of omega") {
        const StabilityReport rep = stability_check(make(2, {0.4, 0.2}, {0.3, 0.4}, 2, 2.0));
        CHECK(rep.lambda == doctest::Approx(0.3));
        CHECK(rep.regime == StabilityRegime::Stable);
    }

    SUBCASE("three photons and up never converge unless decoupled") {
        const StabilityReport rep = stability_check(make(2, {0.1, 0.0}, {0.3, 0.4}, 3));
        CHECK(rep.regime == StabilityRegime::NeverConvergent);
        CHECK_FALSE(rep.ok());
        const StabilityReport off = stability_check(make(2, {0.0, 0.0}, {0.3, 0.4}, 5));
        CHECK(off.regime == StabilityRegime::Stable);
        CHECK_FALSE(off.note.empty());
    }

    CHECK(to_string(StabilityRegime::NeverConvergent) == std::string("never-convergent"));
}

TEST_CASE("diagonalize_chain reports doubled-truncation values with convergence flags") {
    SUBCASE("decoupled ladder is exact") {
        const ChainEigs eigs =
            diagonalize_chain(make(1, {0.0}, {0.3}), {0, +1}, 3, 3);
        REQUIRE(eigs.values.size() == 3);
        CHECK(eigs.values[0] == doctest::Approx(0.3).epsilon(1e-12));
        CHECK(eigs.values[1] == doctest::Approx(0.7).epsilon(1e-12));
        CHECK(eigs.values[2] == doctest::Approx(2.3).epsilon(1e-12));
        CHECK(eigs.converged == std::vector<bool>{true, true, true});
        CHECK(eigs.blocks == 3);
    }

    SUBCASE("a one-block truncation of a coupled chain does not converge") {
        const ChainEigs eigs =
            diagonalize_chain(make(1, {0.8}, {0.4}), {0, +1}, 1, 1);
        CHECK(eigs.values[0] == doctest::Approx(0.5 - std::sqrt(0.65)).epsilon(1e-12));
        CHECK_FALSE(eigs.converged[0]);
    }

    SUBCASE("argument validation") {
        const ModelParams p = make(1, {0.1}, {0.3});
        CHECK_THROWS_AS(diagonalize_chain(p, {0, +1}, 0, 1), std::invalid_argument);
        CHECK_THROWS_AS(diagonalize_chain(p, {0, +1}, 3, 0), std::invalid_argument);
        CHECK_THROWS_AS(diagonalize_chain(p, {0, +1}, 3, 4), std::invalid_argument);
        CHECK_THROWS_AS(diagonalize_chain(p, {1, +1}, 3, 1), std::invalid_argument);
        CHECK_THROWS_AS(diagonalize_chain(p, {0, +1}, 3, 1, 0.0), std::invalid_argument);
    }
}

TEST_CASE("sweep scales couplings over the grid") {
    const ModelParams base = make(2, {0.5, 0.5}, {0.6, 0.4});
    SweepOptions opt;
    opt.blocks = 12;
    opt.levels = 4;

    const SpectrumSweep sw = sweep(base, 0.0, 1.0, 5, opt);
    REQUIRE(sw.grid.size() == 5);
    CHECK(sw.grid[1] == doctest::Approx(0.25));
    CHECK(sw.grid[4] == 1.0);
    REQUIRE(sw.points.size() == 5);
    CHECK(sw.cut_index == -1);
    CHECK(sw.labels.size() == 2);

    // point content: one chain per label, in label order
    const SweepPoint& pt = sw.points[2];
    CHECK(pt.s == doctest::Approx(0.5));
    REQUIRE(pt.chains.size() == 2);
    CHECK(pt.chains[0].label == SubspaceLabel{0, +1});
    CHECK(pt.chains[1].label == SubspaceLabel{0, -1});
    CHECK(pt.chains[0].values.size() == 4);

    // s = 0 point is the bare ladder
    CHECK(sw.points[0].chains[0].values[0] == doctest::Approx(-1.0).epsilon(1e-12));

    SUBCASE("thread count does not change the numbers") {
        SweepOptions opt4 = opt;
        opt4.threads = 4;
        const SpectrumSweep sw4 = sweep(base, 0.0, 1.0, 5, opt4);
        REQUIRE(sw4.points.size() == sw.points.size());
        for (std::size_t k = 0; k < sw.points.size(); ++k)
            for (std::size_t c = 0; c < sw.points[k].chains.size(); ++c)
                for (std::size_t v = 0; v < sw.points[k].chains[c].values.size(); ++v)
                    CHECK(sw4.points[k].chains[c].values[v] ==
                          sw.points[k].chains[c].values[v]);
    }

    SUBCASE("argument validation") {
        CHECK_THROWS_AS(sweep(base, 0.0, 1.0, 1, opt), std::invalid_argument);
        CHECK_THROWS_AS(sweep(base, 1.0, 0.5, 3, opt), std::invalid_argument);
        CHECK_THROWS_AS(sweep(base, -0.5, 1.0, 3, opt), std::invalid_argument);
        SweepOptions bad = opt;
        bad.threads = 0;
        CHECK_THROWS_AS(sweep(base, 0.0, 1.0, 3, bad), std::invalid_argument);
    }
}

TEST_CASE("two-photon sweeps stop at the collapse threshold") {
    const ModelParams base = make(2, {0.3, 0.3}, {0.6, 0.4}, 2);
    SweepOptions opt;
    opt.blocks = 10;
    opt.levels = 3;

    // lambda(s) = 0.6 s crosses 1/2 at the last grid point
    const SpectrumSweep sw = sweep(base, 0.0, 1.0, 5, opt);
    CHECK(sw.cut_index == 4);
    CHECK(sw.grid.size() == 5);
    CHECK(sw.points.size() == 4);

    SweepOptions open = opt;
    open.allow_unstable = true;
    const SpectrumSweep swu = sweep(base, 0.0, 1.0, 5, open);
    CHECK(swu.cut_index == -1);
    CHECK(swu.points.size() == 5);

    SUBCASE("require_converged raises on a hopeless truncation") {
        SweepOptions strict;
        strict.blocks = 1;
        strict.levels = 1;
        strict.require_converged = true;
        CHECK_THROWS_AS(sweep(make(1, {0.8}, {0.4}), 0.5, 1.0, 2, strict),
                        std::runtime_error);
    }
}

TEST_CASE("detect_horizontal finds the coupling-independent level") {
    // equal couplings with splittings summing to omega pin a level at 1
    const ModelParams base = make(2, {0.5, 0.5}, {0.6, 0.4});
    SweepOptions opt;
    opt.blocks = 24;
    opt.levels = 10;

    const SpectrumSweep sw = sweep(base, 0.1, 0.8, 4, opt);
    const auto lines = detect_horizontal(sw);
    REQUIRE(lines.size() == 1);
    CHECK(lines[0].label == SubspaceLabel{0, +1});
    CHECK(lines[0].value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(lines[0].max_deviation < 1e-8);
    REQUIRE(lines[0].multiplicity.size() == 4);
    for (int m : lines[0].multiplicity) CHECK(m >= 1);

    SUBCASE("a grid that starts at zero seeds from the second point") {
        const SpectrumSweep sw0 = sweep(base, 0.0, 0.8, 3, opt);
        const auto lines0 = detect_horizontal(sw0);
        REQUIRE(lines0.size() == 1);
        CHECK(lines0[0].value == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(lines0[0].multiplicity.size() == 3);
    }

    SUBCASE("generic splittings leave nothing pinned") {
        const SpectrumSweep swg =
            sweep(make(2, {0.5, 0.5}, {0.55, 0.3}), 0.1, 0.8, 4, opt);
        CHECK(detect_horizontal(swg).empty());
    }

    SUBCASE("argument validation") {
        CHECK_THROWS_AS(detect_horizontal(sw, 0.0), std::invalid_argument);
        SpectrumSweep tiny = sw;
        tiny.points.resize(1);
        CHECK_THROWS_AS(detect_horizontal(tiny), std::invalid_argument);
    }
}
