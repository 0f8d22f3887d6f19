#include "doctest.h"

#include <set>

#include "qwalk/graph.hpp"

using namespace qwalk;

namespace {

Index total_multiplicity(const Graph& g) {
    Index total = 0;
    for (const auto& e : g.edges()) total += e.multiplicity;
    return total;
}

}  // namespace

TEST_SUITE("graph") {

TEST_CASE("torus n=3 has 9 vertices, 36 directed edges and degree 4") {
    const Graph g = build_torus(3);
    CHECK(g.n_vertices() == 9);
    CHECK(total_multiplicity(g) == 36);
    CHECK(g.self_loop_count() == 0);
    for (Index v = 0; v < 9; ++v) {
        CHECK(g.out_degree(v) == 4);
        CHECK(g.in_degree(v) == 4);
    }
    // (0,0) -> (2,0), (1,0), (0,2), (0,1)
    CHECK(g.multiplicity(0, g.vertex_at(2, 0)) == 1);
    CHECK(g.multiplicity(0, g.vertex_at(1, 0)) == 1);
    CHECK(g.multiplicity(0, g.vertex_at(0, 2)) == 1);
    CHECK(g.multiplicity(0, g.vertex_at(0, 1)) == 1);
}

TEST_CASE("torus n=2 merges the two wraparound neighbours") {
    const Graph g = build_torus(2);
    CHECK(g.n_vertices() == 4);
    for (Index v = 0; v < 4; ++v) CHECK(g.out_degree(v) == 4);
    CHECK(g.multiplicity(0, g.vertex_at(1, 0)) == 2);
    CHECK(g.multiplicity(0, g.vertex_at(0, 1)) == 2);
    CHECK(g.multiplicity(0, g.vertex_at(1, 1)) == 0);
}

TEST_CASE("grid n=3 clamps at the boundary") {
    const Graph g = build_grid(3);
    const Index corner = g.vertex_at(0, 0);
    CHECK(g.multiplicity(corner, corner) == 2);
    CHECK(g.multiplicity(corner, g.vertex_at(1, 0)) == 1);
    CHECK(g.multiplicity(corner, g.vertex_at(0, 1)) == 1);
    const Index centre = g.vertex_at(1, 1);
    CHECK(g.multiplicity(centre, centre) == 0);
    const Index edge = g.vertex_at(0, 1);
    CHECK(g.multiplicity(edge, edge) == 1);
}

TEST_CASE("lattices are 4-regular in and out") {
    for (Index n = 2; n <= 9; ++n) {
        for (const Graph& g : {build_torus(n), build_grid(n)}) {
            CHECK(total_multiplicity(g) == 4 * n * n);
            for (Index v = 0; v < g.n_vertices(); ++v) {
                CHECK(g.out_degree(v) == 4);
                CHECK(g.in_degree(v) == 4);
            }
        }
    }
}

TEST_CASE("torus is vertex transitive") {
    const Index n = 5;
    const Graph g = build_torus(n);
    for (Index r = 0; r < n; ++r) {
        for (Index c = 0; c < n; ++c) {
            const Index v = g.vertex_at(r, c);
            for (const auto& [dr, dc] : {std::pair{1, 0}, {n - 1, 0}, {0, 1}, {0, n - 1}}) {
                CHECK(g.multiplicity(v, g.vertex_at((r + dr) % n, (c + dc) % n)) == 1);
            }
        }
    }
}

TEST_CASE("rejects degenerate sizes") {
    CHECK_THROWS_AS(build_torus(1), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(0), std::invalid_argument);
    CHECK_THROWS_AS(partition_torus(8, 0), std::invalid_argument);
    CHECK_THROWS_AS(partition_torus(8, 9), std::invalid_argument);
}

TEST_CASE("partition examples") {
    SUBCASE("n=16 d=4 gives sixteen 4x4 blocks") {
        const auto layout = partition_torus(16, 4);
        CHECK(layout.blocks().size() == 16);
        for (const auto& b : layout.blocks()) {
            CHECK(b.rows.size() == 4);
            CHECK(b.cols.size() == 4);
        }
    }
    SUBCASE("n=10 d=4 gives four 5x5 blocks") {
        const auto layout = partition_torus(10, 4);
        CHECK(layout.blocks().size() == 4);
        for (const auto& b : layout.blocks()) CHECK(b.size() == 25);
    }
    SUBCASE("n=8 d=8 is a single block") {
        const auto layout = partition_torus(8, 8);
        CHECK(layout.blocks().size() == 1);
        CHECK(layout.blocks()[0].size() == 64);
    }
}

TEST_CASE("partition tiles the torus with near-equal sides") {
    for (Index n = 2; n <= 20; ++n) {
        for (Index d = 1; d <= n; ++d) {
            const auto layout = partition_torus(n, d);
            std::vector<int> covered(static_cast<std::size_t>(n * n), 0);
            for (std::size_t b = 0; b < layout.blocks().size(); ++b) {
                const auto& block = layout.blocks()[b];
                for (Index r = block.rows.begin; r < block.rows.end; ++r) {
                    for (Index c = block.cols.begin; c < block.cols.end; ++c) {
                        ++covered[static_cast<std::size_t>(r * n + c)];
                        CHECK(layout.block_of(r * n + c) == static_cast<Index>(b));
                    }
                }
            }
            for (int hits : covered) CHECK(hits == 1);
            CHECK(layout.max_side() - layout.min_side() <= 1);
            if (2 * d <= n) {
                CHECK(layout.min_side() >= d);
                CHECK(layout.max_side() < 2 * d);
            }
        }
    }
}

TEST_CASE("sub-grid keeps degree 4 and turns cut edges into self-loops") {
    const auto layout = partition_torus(16, 4);
    Index loops = 0;
    for (Index b = 0; b < layout.q() * layout.q(); ++b) {
        const Graph g = subgrid_graph(layout, b);
        for (Index v = 0; v < g.n_vertices(); ++v) CHECK(g.out_degree(v) == 4);
        loops += g.self_loop_count();
    }
    CHECK(loops == cut_edge_count(layout));

    // An interior 4x4 block of the torus is the 4x4 grid.
    const Graph block = subgrid_graph(layout, 5);
    const Graph grid = build_grid(4);
    CHECK(block.n_vertices() == grid.n_vertices());
    for (Index u = 0; u < 16; ++u) {
        for (Index v = 0; v < 16; ++v) CHECK(block.multiplicity(u, v) == grid.multiplicity(u, v));
    }
}

TEST_CASE("single block keeps the wraparound edges as self-loops") {
    const auto layout = partition_torus(6, 6);
    const Graph g = subgrid_graph(layout, 0);
    const Graph grid = build_grid(6);
    for (Index u = 0; u < 36; ++u) {
        for (Index v = 0; v < 36; ++v) CHECK(g.multiplicity(u, v) == grid.multiplicity(u, v));
    }
}

TEST_CASE("json description lists the partition ranges") {
    const auto j = to_json(partition_torus(10, 4));
    CHECK(j.at("n") == 10);
    CHECK(j.at("blocks").size() == 4);
}

}  // TEST_SUITE
