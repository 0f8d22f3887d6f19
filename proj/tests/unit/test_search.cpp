#include "doctest.h"

#include <cmath>

#include "qwalk/instances.hpp"
#include "qwalk/search.hpp"

using namespace qwalk;
using doctest::Approx;

namespace {

SearchConfig config_for(Index n, const std::string& marked) {
    SearchConfig config;
    config.n = n;
    const MarkedSet set = parse_marked(marked, n, n);
    const auto members = set.members();
    config.marked.assign(members.begin(), members.end());
    config.constants = load_calibration(QWALK_CONSTANTS_FILE);
    config.seed = 7;
    return config;
}

// Checkerboard with the 8 x 8 corner block left empty.
std::vector<Index> checker_with_hole(Index n) {
    std::vector<Index> out;
    for (Index r = 0; r < n; ++r)
        for (Index c = 0; c < n; ++c)
            if ((r + c) % 2 == 0 && !(r < 8 && c < 8)) out.push_back(r * n + c);
    return out;
}

}  // namespace

TEST_SUITE("search") {

TEST_CASE("exponent range and block steps") {
    CHECK(max_exponent(16) == 8);
    CHECK(max_exponent(5) == 4);
    CHECK(max_exponent(2) == 2);
    CHECK(block_steps(2, 1.8) == 4);
    CHECK(block_steps(16, 1.0) == static_cast<Index>(std::ceil(16.0 * std::sqrt(std::log(16.0)))));
}

TEST_CASE("single marked vertex on n=8") {
    const auto report = run_search(config_for(8, "singleton"));
    CHECK(report.d == 8);
    CHECK(report.blocks.size() == 1);
    CHECK(report.estimate.capped);
    CHECK(report.best_success >= 1.0 / 50.0);
    CHECK(report.per_k.size() == 6);
}

TEST_CASE("mixture law and empty blocks") {
    SearchConfig config = config_for(32, "singleton");
    config.marked = checker_with_hole(32);
    const auto report = run_search(config);
    REQUIRE(report.blocks.size() > 1);
    bool saw_empty = false;
    for (const auto& k : report.per_k) {
        double mixture = 0.0;
        for (std::size_t b = 0; b < report.blocks.size(); ++b) {
            mixture += report.blocks[b].weight * k.block_success[b];
            if (report.blocks[b].marked_count == 0) {
                CHECK(k.block_success[b] == 0.0);
                saw_empty = true;
            }
            CHECK(k.block_success[b] >= 0.0);
            CHECK(k.block_success[b] <= 1.0);
        }
        CHECK(std::abs(mixture - k.success) <= 1e-12);
    }
    CHECK(saw_empty);
    CHECK(report.best_success >= 1.0 / 50.0);
}

TEST_CASE("two adjacent vertices on n=16") {
    const auto report = run_search(config_for(16, "cells:(3,4);(3,5)"));
    CHECK(report.best_success >= 1.0 / 50.0);
}

TEST_CASE("sweep over k") {
    const auto config = config_for(16, "row");
    const auto single = run_search(config);
    const auto sweep = run_k_sweep(config);
    REQUIRE(sweep.sweep_success.has_value());
    REQUIRE(sweep.sweep_ledger.has_value());
    CHECK(*sweep.sweep_success >= sweep.best_success);
    CHECK(sweep.best_success == single.best_success);
    const auto runs = static_cast<std::int64_t>(sweep.per_k.size());
    CHECK(sweep.sweep_ledger->steps() <= runs * single.ledger.steps());
}

TEST_CASE("fixed k evaluates only that exponent") {
    SearchConfig config = config_for(8, "row");
    config.k = 3;
    const auto report = run_search(config);
    REQUIRE(report.per_k.size() == 1);
    CHECK(report.per_k[0].eps_tilde == 0.125);
    CHECK(report.ledger.steps() == report.estimate.ledger.steps() + report.steps_per_block);
    config.k = 0;
    CHECK_THROWS_AS(run_search(config), std::invalid_argument);
    config.k = 7;
    CHECK_THROWS_AS(run_search(config), std::invalid_argument);
}

TEST_CASE("reports are deterministic") {
    SearchConfig config = config_for(8, "clusters");
    config.sample = true;
    const auto a = to_json(run_search(config)).dump();
    const auto b = to_json(run_search(config)).dump();
    CHECK(a == b);
    const auto report = run_search(config);
    REQUIRE(report.sample.has_value());
    CHECK((report.verdict() == "found" || report.verdict() == "unsuccessful search"));
    CHECK(run_search(config_for(8, "clusters")).verdict() == "probability");
}

TEST_CASE("rejects a fully marked torus") {
    SearchConfig config = config_for(4, "row");
    config.marked.clear();
    for (Index v = 0; v < 16; ++v) config.marked.push_back(v);
    CHECK_THROWS_AS(run_search(config), std::invalid_argument);
}

TEST_CASE("cost scale takes the smaller branch") {
    bool h_branch = false;
    const double n_branch = std::sqrt(1024.0 * std::log(1024.0));
    CHECK(cost_scale(1e9, 1024, &h_branch) == Approx(n_branch));
    CHECK_FALSE(h_branch);
    CHECK(cost_scale(2.0, 1024, &h_branch) == Approx(std::sqrt(2.0)));
    CHECK(h_branch);
    for (double h : {0.5, 3.0, 100.0, 1e4, 1e6}) CHECK(cost_scale(h, 1024) <= n_branch + 1e-12);
}

}  // TEST_SUITE
