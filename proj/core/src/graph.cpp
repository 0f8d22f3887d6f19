#include "qwalk/graph.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>
#include <tuple>

namespace qwalk {

const char* to_string(GraphKind kind) {
    switch (kind) {
        case GraphKind::torus: return "torus";
        case GraphKind::grid: return "grid";
        case GraphKind::generic: return "generic";
    }
    return "generic";
}

Graph::Graph(Index n_vertices, std::vector<Edge> edges, std::vector<Coord> coords,
             GraphKind kind, Index rows, Index cols)
    : n_vertices_(n_vertices), coords_(std::move(coords)), kind_(kind), rows_(rows), cols_(cols) {
    if (n_vertices <= 0) throw std::invalid_argument("graph needs at least one vertex");
    if (static_cast<Index>(coords_.size()) != n_vertices)
        throw std::invalid_argument("coords size does not match vertex count");

    for (const auto& e : edges) {
        if (e.source < 0 || e.source >= n_vertices || e.target < 0 || e.target >= n_vertices)
            throw std::invalid_argument("edge endpoint out of range");
        if (e.multiplicity <= 0) throw std::invalid_argument("edge multiplicity must be positive");
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        return std::tie(a.source, a.target) < std::tie(b.source, b.target);
    });
    for (const auto& e : edges) {
        if (!edges_.empty() && edges_.back().source == e.source && edges_.back().target == e.target)
            edges_.back().multiplicity += e.multiplicity;
        else
            edges_.push_back(e);
    }

    const auto n = static_cast<std::size_t>(n_vertices);
    offsets_.assign(n + 1, 0);
    in_degree_.assign(n, 0);
    for (const auto& e : edges_) {
        ++offsets_[static_cast<std::size_t>(e.source) + 1];
        in_degree_[static_cast<std::size_t>(e.target)] += e.multiplicity;
    }
    for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] += offsets_[v];
}

std::span<const Edge> Graph::out_edges(Index v) const {
    const auto i = static_cast<std::size_t>(v);
    return std::span<const Edge>(edges_).subspan(offsets_.at(i), offsets_.at(i + 1) - offsets_[i]);
}

int Graph::out_degree(Index v) const {
    int total = 0;
    for (const auto& e : out_edges(v)) total += e.multiplicity;
    return total;
}

int Graph::multiplicity(Index source, Index target) const {
    for (const auto& e : out_edges(source))
        if (e.target == target) return e.multiplicity;
    return 0;
}

Index Graph::self_loop_count() const {
    Index total = 0;
    for (const auto& e : edges_)
        if (e.source == e.target) total += e.multiplicity;
    return total;
}

namespace {

template <class Neighbours>
Graph lattice(Index rows, Index cols, GraphKind kind, Neighbours&& neighbours) {
    std::vector<Edge> edges;
    std::vector<Coord> coords;
    edges.reserve(static_cast<std::size_t>(4 * rows * cols));
    coords.reserve(static_cast<std::size_t>(rows * cols));
    for (Index r = 0; r < rows; ++r) {
        for (Index c = 0; c < cols; ++c) {
            coords.push_back({r, c});
            for (const Coord& t : neighbours(r, c))
                edges.push_back({r * cols + c, t.row * cols + t.col, 1});
        }
    }
    return Graph(rows * cols, std::move(edges), std::move(coords), kind, rows, cols);
}

}  // namespace

Graph build_torus(Index n) {
    if (n < 2) throw std::invalid_argument("torus side must be at least 2, got " + std::to_string(n));
    return lattice(n, n, GraphKind::torus, [n](Index r, Index c) {
        return std::array<Coord, 4>{{{(r + n - 1) % n, c}, {(r + 1) % n, c},
                                     {r, (c + n - 1) % n}, {r, (c + 1) % n}}};
    });
}

Graph build_grid(Index n) {
    if (n < 2) throw std::invalid_argument("grid side must be at least 2, got " + std::to_string(n));
    return build_grid(n, n);
}

Graph build_grid(Index rows, Index cols) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("grid sides must be positive");
    return lattice(rows, cols, GraphKind::grid, [rows, cols](Index r, Index c) {
        return std::array<Coord, 4>{{{std::max<Index>(r - 1, 0), c},
                                     {std::min<Index>(r + 1, rows - 1), c},
                                     {r, std::max<Index>(c - 1, 0)},
                                     {r, std::min<Index>(c + 1, cols - 1)}}};
    });
}

PartitionLayout::PartitionLayout(Index n, Index d, std::vector<Range> axis_ranges)
    : n_(n), d_(d), axis_(std::move(axis_ranges)) {
    Index expected = 0;
    for (const auto& r : axis_) {
        if (r.begin != expected || r.size() <= 0)
            throw std::invalid_argument("axis ranges must tile [0, n) in order");
        expected = r.end;
    }
    if (expected != n) throw std::invalid_argument("axis ranges must cover [0, n)");

    block_of_.assign(static_cast<std::size_t>(n * n), 0);
    for (const auto& rows : axis_) {
        for (const auto& cols : axis_) {
            const auto id = static_cast<Index>(blocks_.size());
            blocks_.push_back({rows, cols});
            for (Index r = rows.begin; r < rows.end; ++r)
                for (Index c = cols.begin; c < cols.end; ++c)
                    block_of_[static_cast<std::size_t>(r * n + c)] = id;
        }
    }
}

Index PartitionLayout::min_side() const {
    Index m = n_;
    for (const auto& r : axis_) m = std::min(m, r.size());
    return m;
}

Index PartitionLayout::max_side() const {
    Index m = 0;
    for (const auto& r : axis_) m = std::max(m, r.size());
    return m;
}

PartitionLayout partition_torus(Index n, Index d) {
    if (n < 2) throw std::invalid_argument("torus side must be at least 2");
    if (d < 1 || d > n)
        throw std::invalid_argument("cut parameter d must lie in [1, n], got " + std::to_string(d));
    const Index q = std::max<Index>(1, n / d);
    const Index base = n / q;
    const Index extra = n % q;
    std::vector<Range> axis;
    Index at = 0;
    for (Index i = 0; i < q; ++i) {
        const Index len = base + (i < extra ? 1 : 0);
        axis.push_back({at, at + len});
        at += len;
    }
    return PartitionLayout(n, d, std::move(axis));
}

Graph subgrid_graph(const PartitionLayout& layout, Index block) {
    const auto blocks = layout.blocks();
    if (block < 0 || block >= static_cast<Index>(blocks.size()))
        throw std::out_of_range("block index out of range");
    const Block& b = blocks[static_cast<std::size_t>(block)];
    // Unwrapped torus neighbours leaving the block become self-loops, which is
    // exactly the clamped grid on the block.
    return build_grid(b.rows.size(), b.cols.size());
}

Index cut_edge_count(const PartitionLayout& layout) {
    Index cut = 0;
    for (const auto& b : layout.blocks()) {
        for (Index r = b.rows.begin; r < b.rows.end; ++r) {
            for (Index c = b.cols.begin; c < b.cols.end; ++c) {
                cut += (r - 1 < b.rows.begin) + (r + 1 >= b.rows.end) + (c - 1 < b.cols.begin) +
                       (c + 1 >= b.cols.end);
            }
        }
    }
    return cut;
}

nlohmann::json to_json(const Graph& g) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : g.edges()) edges.push_back({e.source, e.target, e.multiplicity});
    nlohmann::json coords = nlohmann::json::array();
    for (const auto& c : g.coords()) coords.push_back({c.row, c.col});
    return {{"kind", to_string(g.kind())},
            {"rows", g.rows()},
            {"cols", g.cols()},
            {"n_vertices", g.n_vertices()},
            {"edges", std::move(edges)},
            {"coords", std::move(coords)}};
}

nlohmann::json to_json(const PartitionLayout& layout) {
    nlohmann::json blocks = nlohmann::json::array();
    for (const auto& b : layout.blocks())
        blocks.push_back({{"rows", {b.rows.begin, b.rows.end}}, {"cols", {b.cols.begin, b.cols.end}}});
    return {{"n", layout.n()},
            {"d", layout.d()},
            {"q", layout.q()},
            {"min_side", layout.min_side()},
            {"max_side", layout.max_side()},
            {"blocks", std::move(blocks)}};
}

}  // namespace qwalk
