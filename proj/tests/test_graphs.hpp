#ifndef QWALK_TESTS_TEST_GRAPHS_HPP
#define QWALK_TESTS_TEST_GRAPHS_HPP

#include "qwalk/digraph.hpp"
#include "qwalk/graph_io.hpp"

namespace qwalk::testing {

// Four vertices: blocks {0,2} and {1,3} (each an undirected edge) joined by
// the one-way arcs 0->1 and 2->3.
inline constexpr const char* kTwoBlockText = "vertices 4\n0 1\n2 3\n0 2\n2 0\n1 3\n3 1\n";

// Three vertices: undirected edges 0-1 and 0-2 plus the one-way arc 2->1.
inline constexpr const char* kTriangleText = "vertices 3\n0 1\n1 0\n0 2\n2 0\n2 1\n";

inline DiGraph two_block_graph() { return parse_graph(kTwoBlockText); }
inline DiGraph triangle_graph() { return parse_graph(kTriangleText); }

}  // namespace qwalk::testing

#endif  // QWALK_TESTS_TEST_GRAPHS_HPP
