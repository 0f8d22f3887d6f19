#include "doctest.h"

#include <atomic>
#include <vector>

#include "qwalk/calibration.hpp"
#include "qwalk/instances.hpp"
#include "qwalk/parallel.hpp"

using namespace qwalk;

TEST_SUITE("instances") {

TEST_CASE("graph specs") {
    const auto t = parse_graph_spec("torus:7");
    CHECK(t.kind == GraphKind::torus);
    CHECK(t.n == 7);
    CHECK(t.str() == "torus:7");
    CHECK(parse_graph_spec("grid:3").kind == GraphKind::grid);
    CHECK(build_graph(t).n_vertices() == 49);
    for (const char* bad : {"ring:4", "torus:", "torus:x", "torus:1", "grid:-3", "torus"})
        CHECK_THROWS_AS(parse_graph_spec(bad), std::invalid_argument);
}

TEST_CASE("marked families") {
    CHECK(parse_marked("singleton", 4, 4).members()[0] == 0);
    CHECK(parse_marked("row", 4, 4).size() == 4);
    CHECK(parse_marked("half", 4, 4).size() == 8);
    CHECK(parse_marked("halfcheck", 4, 4).size() == 12);
    CHECK(parse_marked("clusters", 8, 8).size() == 8);
    CHECK(parse_marked("rows:1,2", 4, 4).size() == 8);
    CHECK(parse_marked("cols:0,3", 4, 4).size() == 8);
    const auto cells = parse_marked("cells:(1,2);(3,0)", 4, 4);
    CHECK(cells.size() == 2);
    CHECK(cells.contains(6));
    CHECK(cells.contains(12));
    CHECK(parse_marked("random:5:9", 6, 6).size() == 5);
    CHECK(parse_marked("random:5:9", 6, 6).members()[0] == parse_marked("random:5:9", 6, 6).members()[0]);
}

TEST_CASE("bad marked specs name the offending text") {
    for (const char* bad : {"cells:(9,9)", "rows:5", "random:99:1", "cells:(1,2", "nothing", "halfcheck"}) {
        const Index cols = std::string(bad) == "halfcheck" ? 5 : 4;
        try {
            parse_marked(bad, 4, cols);
            FAIL("accepted " << bad);
        } catch (const std::invalid_argument& e) {
            CHECK(std::string(e.what()).find(std::string(bad).substr(0, 4)) != std::string::npos);
        }
    }
}

TEST_CASE("calibration text") {
    const Calibration k = parse_calibration("# comment\nc = 0.3\nc2 = 1.8  # finding\nc3 = 45\n");
    CHECK(k.c == 0.3);
    CHECK(k.c2 == 1.8);
    CHECK(k.c3 == 45.0);
    CHECK(k.canonical() == "c = 0.3\nc2 = 1.8\nc3 = 45\n");
    CHECK(parse_calibration(k.canonical()).hash() == k.hash());
    CHECK(k.hash().size() == 16);
    Calibration other = k;
    other.c3 = 46;
    CHECK(other.hash() != k.hash());
    CHECK_THROWS_AS(parse_calibration("c = 0.3\nc2 = 1.8\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_calibration("c = 0.3\nc2 = 1.8\nc3 = 45\nc4 = 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_calibration("c = -1\nc2 = 1.8\nc3 = 45\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_calibration("c = zero\nc2 = 1.8\nc3 = 45\n"), std::invalid_argument);
}

TEST_CASE("frozen constants file parses") {
    const Calibration k = load_calibration(QWALK_CONSTANTS_FILE);
    CHECK(k.c > 0.0);
    CHECK(k.c2 > 0.0);
    CHECK(k.c3 > 0.0);
}

TEST_CASE("parallel_for fills every slot once") {
    std::vector<int> slots(1000, 0);
    parallel_for(1000, [&](std::ptrdiff_t i) { slots[static_cast<std::size_t>(i)] += static_cast<int>(i); });
    for (std::size_t i = 0; i < slots.size(); ++i) CHECK(slots[i] == static_cast<int>(i));
    CHECK(worker_count() >= 1);
    CHECK_THROWS_AS(parallel_for(10, [](std::ptrdiff_t i) {
                        if (i == 3) throw std::runtime_error("boom");
                    }),
                    std::runtime_error);
}

}  // TEST_SUITE
