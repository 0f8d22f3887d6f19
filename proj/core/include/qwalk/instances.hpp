#pragma once

// Text specifications for graphs and marked sets, as accepted on the command
// line.
//
//   graph:   torus:<n> | grid:<n>
//   marked:  rows:a,b | cols:a,b | cells:(r,c);(r,c) | random:<m>:<seed>
//            | singleton | row | clusters | half | halfcheck

#include <string>

#include "qwalk/graph.hpp"
#include "qwalk/markov.hpp"

namespace qwalk {

struct GraphSpec {
    GraphKind kind = GraphKind::torus;
    Index n = 0;

    std::string str() const;
};

/// Throws std::invalid_argument naming the offending text.
GraphSpec parse_graph_spec(const std::string& text);
Graph build_graph(const GraphSpec& spec);

/// Marked set on a rows x cols lattice (row-major indices).
///   singleton  the vertex (0, 0)
///   row        row 0
///   clusters   2 x 2 blocks with corners (0, 0) and (rows/2, cols/2)
///   half       every column c < cols/2
///   halfcheck  columns c < cols/2 plus the right-half cells with r + c even
MarkedSet parse_marked(const std::string& text, Index rows, Index cols);

}  // namespace qwalk
