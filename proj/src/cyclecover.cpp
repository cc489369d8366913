#include "qwalk/cyclecover.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace qwalk {

std::vector<Arc> Cycle::arcs() const {
  std::vector<Arc> out;
  const std::size_t k = vertices.size();
  for (std::size_t i = 0; i < k; ++i) out.push_back({vertices[i], vertices[(i + 1) % k]});
  return out;
}

Permutation Permutation::identity(int n) {
  std::vector<Vertex> image(static_cast<std::size_t>(n));
  std::iota(image.begin(), image.end(), 0);
  return Permutation(std::move(image));
}

Permutation Permutation::from_cycle(int n, const Cycle& cycle) {
  Permutation p = identity(n);
  const std::size_t k = cycle.vertices.size();
  for (std::size_t i = 0; i < k; ++i) {
    const Vertex v = cycle.vertices[i];
    if (v < 0 || v >= n) throw std::out_of_range("Permutation::from_cycle: vertex out of range");
    if (p.image_[static_cast<std::size_t>(v)] != v) {
      throw std::invalid_argument("Permutation::from_cycle: repeated vertex " + std::to_string(v));
    }
    p.image_[static_cast<std::size_t>(v)] = cycle.vertices[(i + 1) % k];
  }
  return from_images(std::move(p.image_));
}

Permutation Permutation::from_images(std::vector<Vertex> image) {
  std::vector<char> hit(image.size(), 0);
  for (Vertex w : image) {
    if (w < 0 || static_cast<std::size_t>(w) >= image.size() || hit[static_cast<std::size_t>(w)]) {
      throw std::invalid_argument("Permutation: image list is not a bijection");
    }
    hit[static_cast<std::size_t>(w)] = 1;
  }
  return Permutation(std::move(image));
}

bool Permutation::is_identity() const { return moved().empty(); }

std::vector<Vertex> Permutation::moved() const {
  std::vector<Vertex> out;
  for (std::size_t v = 0; v < image_.size(); ++v) {
    if (image_[v] != static_cast<Vertex>(v)) out.push_back(static_cast<Vertex>(v));
  }
  return out;
}

std::vector<Arc> Permutation::arcs() const {
  std::vector<Arc> out;
  out.reserve(image_.size());
  for (std::size_t v = 0; v < image_.size(); ++v) out.push_back({static_cast<Vertex>(v), image_[v]});
  return out;
}

Cycle cycle_through_arc(const DiGraph& g, Vertex from, Vertex to) {
  if (!g.has_arc(from, to)) {
    throw GraphError("arc " + to_string({from, to}) + " is not in the graph", {{from, to}});
  }
  if (from == to) return Cycle{{from}};

  // BFS from `to` back to `from`; out_neighbours are ascending, so the first
  // parent recorded is the lowest-index one.
  const auto n = static_cast<std::size_t>(g.size());
  std::vector<Vertex> parent(n, -1);
  std::vector<Vertex> frontier{to};
  parent[static_cast<std::size_t>(to)] = to;
  bool found = false;
  for (std::size_t head = 0; head < frontier.size() && !found; ++head) {
    const Vertex u = frontier[head];
    for (Vertex w : g.out_neighbours(u)) {
      if (parent[static_cast<std::size_t>(w)] >= 0) continue;
      parent[static_cast<std::size_t>(w)] = u;
      if (w == from) {
        found = true;
        break;
      }
      frontier.push_back(w);
    }
  }
  if (!found) {
    throw GraphError("arc " + to_string({from, to}) + " is irreversible: no path back",
                     {{from, to}});
  }

  std::vector<Vertex> back_path;  // from `from` back to `to`, excluding `from`
  for (Vertex v = parent[static_cast<std::size_t>(from)]; v != to;
       v = parent[static_cast<std::size_t>(v)]) {
    back_path.push_back(v);
  }
  Cycle cycle{{from, to}};
  cycle.vertices.insert(cycle.vertices.end(), back_path.rbegin(), back_path.rend());
  return cycle;
}

CycleCover build_cover(const DiGraph& g) {
  if (auto bad = irreversible_arcs(g); !bad.empty()) {
    std::string list;
    for (const Arc& a : bad) list += (list.empty() ? "" : " ") + to_string(a);
    throw GraphError("graph is irreversible; irreversible arcs: " + list, std::move(bad));
  }

  CycleCover cover;
  cover.n = g.size();
  cover.permutations.push_back(Permutation::identity(g.size()));
  cover.cycles.emplace_back();

  std::set<Arc> covered;
  for (const Arc& a : g.arcs()) {
    if (a.is_loop() || covered.contains(a)) continue;
    Cycle c = cycle_through_arc(g, a.from, a.to);
    for (const Arc& ca : c.arcs()) covered.insert(ca);
    cover.permutations.push_back(Permutation::from_cycle(g.size(), c));
    cover.cycles.push_back({std::move(c)});
  }
  return cover;
}

CycleCover merge_disjoint(const CycleCover& cover) {
  CycleCover out;
  out.n = cover.n;
  std::vector<std::vector<char>> occupied;  // per output permutation
  for (std::size_t i = 0; i < cover.size(); ++i) {
    const Permutation& p = cover.permutations[i];
    const auto moved = p.moved();
    std::size_t target = out.size();
    if (!moved.empty()) {
      for (std::size_t j = 0; j < out.size(); ++j) {
        if (out.permutations[j].is_identity()) continue;
        const bool disjoint = std::none_of(moved.begin(), moved.end(), [&](Vertex v) {
          return occupied[j][static_cast<std::size_t>(v)] != 0;
        });
        if (disjoint) {
          target = j;
          break;
        }
      }
    }
    if (target == out.size()) {
      out.permutations.push_back(p);
      out.cycles.push_back(cover.cycles[i]);
      occupied.emplace_back(static_cast<std::size_t>(cover.n), 0);
    } else {
      std::vector<Vertex> image = out.permutations[target].images();
      for (Vertex v : moved) image[static_cast<std::size_t>(v)] = p(v);
      out.permutations[target] = Permutation::from_images(std::move(image));
      auto& cycles = out.cycles[target];
      cycles.insert(cycles.end(), cover.cycles[i].begin(), cover.cycles[i].end());
    }
    for (Vertex v : moved) occupied[target][static_cast<std::size_t>(v)] = 1;
  }
  return out;
}

std::vector<Arc> covered_arcs(const CycleCover& cover) {
  std::set<Arc> arcs;
  for (const Permutation& p : cover.permutations) {
    for (const Arc& a : p.arcs()) arcs.insert(a);
  }
  return {arcs.begin(), arcs.end()};
}

bool is_valid_cover(const CycleCover& cover, const DiGraph& g) {
  if (cover.n != g.size() || cover.permutations.empty() || cover.cycles.size() != cover.size()) {
    return false;
  }
  if (!cover.permutations.front().is_identity()) return false;
  if (cover.size() > g.arc_count()) return false;
  for (const Permutation& p : cover.permutations) {
    if (p.size() != g.size()) return false;
    for (const Arc& a : p.arcs()) {
      if (!a.is_loop() && !g.has_arc(a)) return false;
    }
  }
  for (std::size_t i = 0; i < cover.size(); ++i) {
    for (const Cycle& c : cover.cycles[i]) {
      for (Vertex v : c.vertices) {
        if (v < 0 || v >= g.size()) return false;
      }
      for (const Arc& a : c.arcs()) {
        if (cover.permutations[i](a.from) != a.to) return false;
      }
    }
  }
  return covered_arcs(cover) == g.arcs();
}

ComplexMatrix permutation_matrix(const Permutation& p) {
  ComplexMatrix m = ComplexMatrix::Zero(p.size(), p.size());
  for (Vertex v = 0; v < p.size(); ++v) m(p(v), v) = 1.0;
  return m;
}

nlohmann::json cover_to_json(const CycleCover& cover) {
  nlohmann::json perms = nlohmann::json::array();
  for (const Permutation& p : cover.permutations) perms.push_back(p.images());
  return {{"n", cover.n}, {"perms", std::move(perms)}};
}

}  // namespace qwalk
