#pragma once

// Lattice graphs (torus and grid) and the partition of a torus into sub-grids.
//
// Vertices of an n x n lattice are indexed row-major: v = r * n + c.

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

namespace qwalk {

using Index = std::ptrdiff_t;

enum class GraphKind { torus, grid, generic };

const char* to_string(GraphKind kind);

struct Coord {
    Index row = 0;
    Index col = 0;
    auto operator<=>(const Coord&) const = default;
};

/// A directed edge with multiplicity; parallel edges are merged into one record.
struct Edge {
    Index source = 0;
    Index target = 0;
    int multiplicity = 1;
    bool operator==(const Edge&) const = default;
};

/// Directed multigraph with per-vertex lattice coordinates. Immutable.
class Graph {
public:
    /// Edges may repeat; they are merged and sorted by (source, target).
    Graph(Index n_vertices, std::vector<Edge> edges, std::vector<Coord> coords,
          GraphKind kind, Index rows, Index cols);

    Index n_vertices() const { return n_vertices_; }
    GraphKind kind() const { return kind_; }
    Index rows() const { return rows_; }
    Index cols() const { return cols_; }

    std::span<const Edge> edges() const { return edges_; }
    std::span<const Edge> out_edges(Index v) const;
    std::span<const Coord> coords() const { return coords_; }

    int out_degree(Index v) const;
    int in_degree(Index v) const { return in_degree_.at(static_cast<std::size_t>(v)); }
    int multiplicity(Index source, Index target) const;
    Index self_loop_count() const;

    Index vertex_at(Index row, Index col) const { return row * cols_ + col; }

private:
    Index n_vertices_;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_;
    std::vector<int> in_degree_;
    std::vector<Coord> coords_;
    GraphKind kind_;
    Index rows_;
    Index cols_;
};

/// n x n torus; (r, c) points to (r +- 1 mod n, c) and (r, c +- 1 mod n).
Graph build_torus(Index n);

/// n x n grid; out-of-range neighbours are clamped, producing self-loops.
Graph build_grid(Index n);

/// Rectangular grid used for sub-grid blocks whose sides differ.
Graph build_grid(Index rows, Index cols);

/// Half-open interval [begin, end).
struct Range {
    Index begin = 0;
    Index end = 0;
    Index size() const { return end - begin; }
    bool contains(Index x) const { return x >= begin && x < end; }
    bool operator==(const Range&) const = default;
};

struct Block {
    Range rows;
    Range cols;
    Index size() const { return rows.size() * cols.size(); }
};

/// Disjoint tiling of the n x n torus into rectangular blocks.
class PartitionLayout {
public:
    PartitionLayout() = default;
    PartitionLayout(Index n, Index d, std::vector<Range> axis_ranges);

    Index n() const { return n_; }
    Index d() const { return d_; }
    /// Blocks per axis.
    Index q() const { return static_cast<Index>(axis_.size()); }
    std::span<const Block> blocks() const { return blocks_; }
    std::span<const Range> axis_ranges() const { return axis_; }
    Index block_of(Index vertex) const { return block_of_.at(static_cast<std::size_t>(vertex)); }

    /// Smallest block side; every side is min_side() or min_side() + 1.
    Index min_side() const;
    Index max_side() const;

private:
    Index n_ = 0;
    Index d_ = 0;
    std::vector<Range> axis_;
    std::vector<Block> blocks_;
    std::vector<Index> block_of_;
};

/// Cuts the torus into q = max(1, floor(n/d)) blocks per axis. The first
/// (n mod q) blocks on each axis are one longer than the rest.
PartitionLayout partition_torus(Index n, Index d);

/// The block's induced subgraph of the torus with every cut edge (including
/// wraparound edges) turned into a self-loop at its source. Local
/// coordinates, row-major within the block.
Graph subgrid_graph(const PartitionLayout& layout, Index block);

/// Number of torus edges (with multiplicity) leaving their block.
Index cut_edge_count(const PartitionLayout& layout);

nlohmann::json to_json(const Graph& g);
nlohmann::json to_json(const PartitionLayout& layout);

}  // namespace qwalk
