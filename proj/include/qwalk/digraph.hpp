#ifndef QWALK_DIGRAPH_HPP
#define QWALK_DIGRAPH_HPP

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qwalk {

using Vertex = int;

//! Directed arc from -> to.
struct Arc {
  Vertex from = 0;
  Vertex to = 0;

  bool is_loop() const { return from == to; }
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

std::string to_string(const Arc& arc);

//! Raised when a graph does not satisfy a precondition (irreversible input,
//! absent arc). Carries the offending arcs when there are any.
class GraphError : public std::invalid_argument {
 public:
  explicit GraphError(const std::string& what, std::vector<Arc> arcs = {})
      : std::invalid_argument(what), arcs_(std::move(arcs)) {}
  const std::vector<Arc>& arcs() const { return arcs_; }

 private:
  std::vector<Arc> arcs_;
};

//! Finite digraph on vertices 0..n-1 with at most one arc per ordered pair.
//!
//! The walk constructions assume a self-loop at every vertex, so the normal
//! constructor adds them. `DiGraph::raw` skips that and is meant for
//! oracles and for supports of arbitrary matrices.
//! Adjacency-matrix views use the convention G(i, j) = 1 iff j -> i.
class DiGraph {
 public:
  DiGraph() = default;

  //! Graph on n vertices with the given arcs plus a self-loop at every vertex.
  DiGraph(int n, std::span<const Arc> arcs);

  static DiGraph raw(int n, std::span<const Arc> arcs);

  int size() const { return n_; }
  bool self_loops_added() const { return self_loops_added_; }

  bool has_arc(Vertex from, Vertex to) const;
  bool has_arc(const Arc& arc) const { return has_arc(arc.from, arc.to); }

  //! All arcs, sorted lexicographically by (from, to).
  const std::vector<Arc>& arcs() const { return arcs_; }
  std::size_t arc_count() const { return arcs_.size(); }

  //! Out-neighbours of v in increasing order (includes v if it has a loop).
  std::span<const Vertex> out_neighbours(Vertex v) const;

  //! Same vertex count, same loop flag, plus the extra arcs.
  DiGraph with_arcs(std::span<const Arc> extra) const;

  //! Optional labels, empty or one per vertex.
  const std::vector<std::string>& labels() const { return labels_; }
  void set_labels(std::vector<std::string> labels);

  friend bool operator==(const DiGraph& a, const DiGraph& b) {
    return a.n_ == b.n_ && a.arcs_ == b.arcs_;
  }

 private:
  DiGraph(int n, std::span<const Arc> arcs, bool add_loops);
  void check_vertex(Vertex v) const;

  int n_ = 0;
  bool self_loops_added_ = false;
  std::vector<Arc> arcs_;
  std::vector<std::uint8_t> adjacency_;  // row-major [from * n + to]
  std::vector<std::size_t> out_offsets_;
  std::vector<Vertex> out_targets_;
  std::vector<std::string> labels_;
};

//! Disjoint vertex blocks covering all vertices (the strongly connected
//! components), and the arcs running between blocks.
struct ReversiblePartition {
  std::vector<std::vector<Vertex>> blocks;  // each sorted; ordered by first vertex
  std::vector<Arc> irreversible_arcs;       // sorted
  std::vector<int> block_of;                // vertex -> index into blocks
};

bool reachable(const DiGraph& g, Vertex s, Vertex t);

//! Component id per vertex for the strongly connected components. Ids are
//! assigned in order of each component's smallest vertex.
std::vector<int> strongly_connected_components(const DiGraph& g);

//! Component id per vertex treating arcs as undirected (weak connectivity).
std::vector<int> connected_components(const DiGraph& g);

//! True iff there is a path back from arc.to to arc.from. Throws GraphError
//! if the arc is not in g.
bool is_arc_reversible(const DiGraph& g, Vertex from, Vertex to);

bool is_reversible(const DiGraph& g);

//! Arcs whose endpoints lie in different strongly connected components.
std::vector<Arc> irreversible_arcs(const DiGraph& g);

ReversiblePartition reversible_partition(const DiGraph& g);

//! Subgraph keeping only the reversible arcs (same vertex set, raw: no loops
//! are added beyond those already present).
DiGraph reversible_subgraph(const DiGraph& g);

//! Checks that every vertex in each connected component reaches every other
//! one. Requires g reversible, throws GraphError otherwise.
bool all_pairs_reachable_in_component(const DiGraph& g);

// Generators. All return graphs with self-loops added.

DiGraph directed_cycle(int n);
DiGraph complete_graph(int n);
//! Cayley digraph of Z_n: v -> v + g (mod n) for each generator g.
DiGraph cayley_zn(int n, std::span<const int> generators);
//! Arcs i -> j (i < j) each kept independently with probability `density`.
DiGraph random_dag(int n, double density, std::uint64_t seed);
//! Every ordered pair i != j kept independently with probability `density`.
DiGraph random_digraph(int n, double density, std::uint64_t seed);

}  // namespace qwalk

#endif  // QWALK_DIGRAPH_HPP
