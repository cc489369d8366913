#include "qwalk/digraph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "qwalk/random.hpp"

namespace qwalk {

std::string to_string(const Arc& arc) {
  return "(" + std::to_string(arc.from) + "," + std::to_string(arc.to) + ")";
}

DiGraph::DiGraph(int n, std::span<const Arc> arcs) : DiGraph(n, arcs, true) {}

DiGraph DiGraph::raw(int n, std::span<const Arc> arcs) { return DiGraph(n, arcs, false); }

DiGraph::DiGraph(int n, std::span<const Arc> arcs, bool add_loops)
    : n_(n), self_loops_added_(add_loops) {
  if (n < 0) throw std::invalid_argument("DiGraph: negative vertex count");
  const auto size = static_cast<std::size_t>(n);
  adjacency_.assign(size * size, 0);
  for (const Arc& a : arcs) {
    check_vertex(a.from);
    check_vertex(a.to);
    adjacency_[static_cast<std::size_t>(a.from) * size + static_cast<std::size_t>(a.to)] = 1;
  }
  if (add_loops) {
    for (std::size_t v = 0; v < size; ++v) adjacency_[v * size + v] = 1;
  }

  out_offsets_.assign(size + 1, 0);
  for (std::size_t u = 0; u < size; ++u) {
    for (std::size_t v = 0; v < size; ++v) {
      if (adjacency_[u * size + v]) {
        arcs_.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
        out_targets_.push_back(static_cast<Vertex>(v));
      }
    }
    out_offsets_[u + 1] = out_targets_.size();
  }
}

void DiGraph::check_vertex(Vertex v) const {
  if (v < 0 || v >= n_) {
    throw std::out_of_range("vertex " + std::to_string(v) + " out of range for graph with " +
                            std::to_string(n_) + " vertices");
  }
}

bool DiGraph::has_arc(Vertex from, Vertex to) const {
  check_vertex(from);
  check_vertex(to);
  return adjacency_[static_cast<std::size_t>(from) * static_cast<std::size_t>(n_) +
                    static_cast<std::size_t>(to)] != 0;
}

std::span<const Vertex> DiGraph::out_neighbours(Vertex v) const {
  check_vertex(v);
  const auto u = static_cast<std::size_t>(v);
  return std::span<const Vertex>(out_targets_).subspan(out_offsets_[u],
                                                       out_offsets_[u + 1] - out_offsets_[u]);
}

DiGraph DiGraph::with_arcs(std::span<const Arc> extra) const {
  std::vector<Arc> all = arcs_;
  all.insert(all.end(), extra.begin(), extra.end());
  DiGraph out(n_, all, self_loops_added_);
  out.labels_ = labels_;
  return out;
}

void DiGraph::set_labels(std::vector<std::string> labels) {
  if (!labels.empty() && labels.size() != static_cast<std::size_t>(n_)) {
    throw std::invalid_argument("DiGraph: label count does not match vertex count");
  }
  labels_ = std::move(labels);
}

bool reachable(const DiGraph& g, Vertex s, Vertex t) {
  if (s < 0 || s >= g.size() || t < 0 || t >= g.size()) {
    throw std::out_of_range("reachable: vertex index out of range");
  }
  if (s == t) return true;
  std::vector<char> seen(static_cast<std::size_t>(g.size()), 0);
  std::vector<Vertex> stack{s};
  seen[static_cast<std::size_t>(s)] = 1;
  while (!stack.empty()) {
    const Vertex u = stack.back();
    stack.pop_back();
    for (Vertex w : g.out_neighbours(u)) {
      if (w == t) return true;
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        stack.push_back(w);
      }
    }
  }
  return false;
}

namespace {

// Relabels arbitrary component ids so that ids increase with each
// component's smallest vertex.
std::vector<int> canonical_ids(const std::vector<int>& raw_ids) {
  std::vector<int> remap(raw_ids.size(), -1);
  std::vector<int> out(raw_ids.size());
  int next = 0;
  for (std::size_t v = 0; v < raw_ids.size(); ++v) {
    auto& slot = remap[static_cast<std::size_t>(raw_ids[v])];
    if (slot < 0) slot = next++;
    out[v] = slot;
  }
  return out;
}

}  // namespace

std::vector<int> strongly_connected_components(const DiGraph& g) {
  // Iterative Tarjan.
  const auto n = static_cast<std::size_t>(g.size());
  constexpr int kUnvisited = -1;
  std::vector<int> index(n, kUnvisited), lowlink(n, 0), component(n, -1);
  std::vector<char> on_stack(n, 0);
  std::vector<Vertex> scc_stack;
  struct Frame {
    Vertex v;
    std::size_t next_edge;
  };
  std::vector<Frame> call_stack;
  int counter = 0;
  int components = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call_stack.push_back({static_cast<Vertex>(root), 0});
    while (!call_stack.empty()) {
      Frame& frame = call_stack.back();
      const auto v = static_cast<std::size_t>(frame.v);
      if (frame.next_edge == 0 && index[v] == kUnvisited) {
        index[v] = lowlink[v] = counter++;
        scc_stack.push_back(frame.v);
        on_stack[v] = 1;
      }
      const auto succ = g.out_neighbours(frame.v);
      bool descended = false;
      while (frame.next_edge < succ.size()) {
        const auto w = static_cast<std::size_t>(succ[frame.next_edge++]);
        if (index[w] == kUnvisited) {
          call_stack.push_back({static_cast<Vertex>(w), 0});
          descended = true;
          break;
        }
        if (on_stack[w]) lowlink[v] = std::min(lowlink[v], index[w]);
      }
      if (descended) continue;

      if (lowlink[v] == index[v]) {
        Vertex w;
        do {
          w = scc_stack.back();
          scc_stack.pop_back();
          on_stack[static_cast<std::size_t>(w)] = 0;
          component[static_cast<std::size_t>(w)] = components;
        } while (static_cast<std::size_t>(w) != v);
        ++components;
      }
      call_stack.pop_back();
      if (!call_stack.empty()) {
        const auto parent = static_cast<std::size_t>(call_stack.back().v);
        lowlink[parent] = std::min(lowlink[parent], lowlink[v]);
      }
    }
  }
  return canonical_ids(component);
}

std::vector<int> connected_components(const DiGraph& g) {
  const auto n = static_cast<std::size_t>(g.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      auto& p = parent[static_cast<std::size_t>(x)];
      p = parent[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  };
  for (const Arc& a : g.arcs()) {
    const int ra = find(a.from);
    const int rb = find(a.to);
    if (ra != rb) parent[static_cast<std::size_t>(std::max(ra, rb))] = std::min(ra, rb);
  }
  std::vector<int> roots(n);
  for (std::size_t v = 0; v < n; ++v) roots[v] = find(static_cast<int>(v));
  return canonical_ids(roots);
}

bool is_arc_reversible(const DiGraph& g, Vertex from, Vertex to) {
  if (!g.has_arc(from, to)) {
    throw GraphError("arc " + to_string({from, to}) + " is not in the graph", {{from, to}});
  }
  return reachable(g, to, from);
}

std::vector<Arc> irreversible_arcs(const DiGraph& g) {
  const auto scc = strongly_connected_components(g);
  std::vector<Arc> out;
  for (const Arc& a : g.arcs()) {
    if (scc[static_cast<std::size_t>(a.from)] != scc[static_cast<std::size_t>(a.to)]) {
      out.push_back(a);
    }
  }
  return out;
}

bool is_reversible(const DiGraph& g) { return irreversible_arcs(g).empty(); }

ReversiblePartition reversible_partition(const DiGraph& g) {
  ReversiblePartition p;
  p.block_of = strongly_connected_components(g);
  const int count =
      p.block_of.empty() ? 0 : *std::max_element(p.block_of.begin(), p.block_of.end()) + 1;
  p.blocks.resize(static_cast<std::size_t>(count));
  for (Vertex v = 0; v < g.size(); ++v) {
    p.blocks[static_cast<std::size_t>(p.block_of[static_cast<std::size_t>(v)])].push_back(v);
  }
  for (const Arc& a : g.arcs()) {
    if (p.block_of[static_cast<std::size_t>(a.from)] != p.block_of[static_cast<std::size_t>(a.to)]) {
      p.irreversible_arcs.push_back(a);
    }
  }
  return p;
}

DiGraph reversible_subgraph(const DiGraph& g) {
  const auto scc = strongly_connected_components(g);
  std::vector<Arc> kept;
  for (const Arc& a : g.arcs()) {
    if (scc[static_cast<std::size_t>(a.from)] == scc[static_cast<std::size_t>(a.to)]) {
      kept.push_back(a);
    }
  }
  return DiGraph::raw(g.size(), kept);
}

bool all_pairs_reachable_in_component(const DiGraph& g) {
  const auto bad = irreversible_arcs(g);
  if (!bad.empty()) {
    throw GraphError("all_pairs_reachable_in_component: graph is irreversible", bad);
  }
  const auto component = connected_components(g);
  for (Vertex a = 0; a < g.size(); ++a) {
    for (Vertex b = 0; b < g.size(); ++b) {
      if (component[static_cast<std::size_t>(a)] == component[static_cast<std::size_t>(b)] &&
          !reachable(g, a, b)) {
        return false;
      }
    }
  }
  return true;
}

namespace {

void require_vertex_count(int n) {
  if (n < 1) throw std::invalid_argument("graph generator: n must be at least 1");
}

void require_density(double density) {
  if (!(density >= 0.0 && density <= 1.0)) {
    throw std::invalid_argument("graph generator: density must lie in [0, 1]");
  }
}

}  // namespace

DiGraph directed_cycle(int n) {
  require_vertex_count(n);
  std::vector<Arc> arcs;
  for (Vertex v = 0; v < n; ++v) arcs.push_back({v, (v + 1) % n});
  return DiGraph(n, arcs);
}

DiGraph complete_graph(int n) {
  require_vertex_count(n);
  std::vector<Arc> arcs;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = 0; v < n; ++v) arcs.push_back({u, v});
  }
  return DiGraph(n, arcs);
}

DiGraph cayley_zn(int n, std::span<const int> generators) {
  require_vertex_count(n);
  std::vector<Arc> arcs;
  for (int gen : generators) {
    const int step = ((gen % n) + n) % n;
    for (Vertex v = 0; v < n; ++v) arcs.push_back({v, (v + step) % n});
  }
  return DiGraph(n, arcs);
}

DiGraph random_dag(int n, double density, std::uint64_t seed) {
  require_vertex_count(n);
  require_density(density);
  Rng rng(seed);
  std::vector<Arc> arcs;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (rng.bernoulli(density)) arcs.push_back({u, v});
    }
  }
  return DiGraph(n, arcs);
}

DiGraph random_digraph(int n, double density, std::uint64_t seed) {
  require_vertex_count(n);
  require_density(density);
  Rng rng(seed);
  std::vector<Arc> arcs;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = 0; v < n; ++v) {
      if (u != v && rng.bernoulli(density)) arcs.push_back({u, v});
    }
  }
  return DiGraph(n, arcs);
}

}  // namespace qwalk
