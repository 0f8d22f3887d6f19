#include "doctest.h"

#include <cstdlib>

#include "qwalk/instances.hpp"
#include "qwalk/locality.hpp"

using namespace qwalk;
using doctest::Approx;

TEST_SUITE("locality") {

TEST_CASE("wilson interval") {
    const Interval i = wilson_interval(50, 100, 1.96);
    CHECK(i.low == Approx(0.4038).epsilon(1e-3));
    CHECK(i.high == Approx(0.5962).epsilon(1e-3));
    const Interval all = wilson_interval(1000, 1000);
    CHECK(all.high == Approx(1.0));
    CHECK(all.low < 1.0);
    CHECK(all.low > 0.99);
    CHECK(wilson_interval(0, 10).low == Approx(0.0));
    CHECK_THROWS_AS(wilson_interval(11, 10), std::invalid_argument);
}

TEST_CASE("threshold") {
    CHECK(localization_threshold(0) == 0);
    CHECK(localization_threshold(1) == 4);
    CHECK(localization_threshold(2) == 6);
    CHECK(localization_threshold(16) == 16);
}

TEST_CASE("sampled walks follow the chain") {
    const WalkMatrix p = walk_from_graph(build_grid(5));
    CHECK(sample_walk(p, 3, 0, 1).states.empty());
    const auto path = sample_walk(p, 12, 200, 99);
    REQUIRE(path.states.size() == 200);
    Index previous = path.start;
    for (Index next : path.states) {
        CHECK(p.coeff(next, previous) > 0.0);
        previous = next;
    }
    CHECK(sample_walk(p, 12, 200, 99).states == path.states);
    CHECK_THROWS_AS(sample_walk(p, 25, 1, 1), std::invalid_argument);
}

TEST_CASE("lattice walks take unit steps") {
    for (auto kind : {LatticeKind::line, LatticeKind::grid}) {
        const auto path = sample_lattice_walk(kind, 50, 4);
        REQUIRE(path.positions.size() == 51);
        CHECK(path.positions[0] == Coord{0, 0});
        for (std::size_t t = 1; t < path.positions.size(); ++t) {
            const auto dr = std::abs(path.positions[t].row - path.positions[t - 1].row);
            const auto dc = std::abs(path.positions[t].col - path.positions[t - 1].col);
            CHECK(dr + dc == 1);
            if (kind == LatticeKind::line) CHECK(path.positions[t].col == 0);
        }
    }
    const auto one = sample_lattice_walk(LatticeKind::line, 1, 8);
    CHECK(std::abs(one.positions[1].row) == 1);
    CHECK(one.max_displacement.row == 1);
}

TEST_CASE("short walks are always localized") {
    CHECK(line_localization(1, 1000, 1).fraction == 1.0);
    CHECK(grid_localization(0, 1000, 1).fraction == 1.0);
}

TEST_CASE("localization reports are reproducible and consistent") {
    const auto line = line_localization(100, 20000, 5);
    const auto grid = grid_localization(100, 20000, 5);
    CHECK(to_json(line).dump() == to_json(line_localization(100, 20000, 5)).dump());
    CHECK(line.wilson.low <= line.fraction);
    CHECK(line.fraction <= line.wilson.high);
    CHECK(line.fraction > 0.99);
    // Each grid axis is a lazy line walk, so a union bound applies.
    CHECK(grid.wilson.high >= 2.0 * line.wilson.low - 1.0);
    CHECK(line.endpoint_escapes <= line.trials - line.localized);
}

TEST_CASE("coverage with all but one vertex marked") {
    const Index n = 6;
    std::vector<Index> members;
    for (Index v = 1; v < n * n; ++v) members.push_back(v);
    const auto r = subgrid_coverage(n, MarkedSet(n * n, members), 1, 5000, 3);
    CHECK(r.p_hat == 1.0);
    CHECK(r.p_g == 1.0);
}

TEST_CASE("coverage of a marked row") {
    const Index n = 32;
    const auto r = subgrid_coverage(n, parse_marked("row", n, n), 16, 40000, 11);
    CHECK(r.d == 32);
    CHECK(r.p_hat > 1.0 / 74.0);
    CHECK(r.p_g >= r.p_hat / 5.0 - 3.0 * r.sigma(r.p_hat));
    CHECK(r.p_gl >= r.p_ml);
    CHECK(to_json(r).dump() == to_json(subgrid_coverage(n, parse_marked("row", n, n), 16, 40000, 11)).dump());
}

TEST_CASE("coverage on a multi-block layout") {
    const Index n = 48;
    const auto r = subgrid_coverage(n, parse_marked("rows:30,30", n, n), 1, 20000, 2);
    CHECK(r.blocks > 1);
    CHECK(r.p_g < 1.0);
    CHECK(r.p_gl >= r.p_ml);
    CHECK(r.p_g >= r.p_hat / 5.0);
}

}  // TEST_SUITE
