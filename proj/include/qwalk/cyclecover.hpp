#ifndef QWALK_CYCLECOVER_HPP
#define QWALK_CYCLECOVER_HPP

#include <vector>

#include <nlohmann/json.hpp>

#include "qwalk/digraph.hpp"
#include "qwalk/qlinalg.hpp"

namespace qwalk {

//! Simple cycle v0 -> v1 -> ... -> v(k-1) -> v0. A single vertex is a loop.
struct Cycle {
  std::vector<Vertex> vertices;

  //! The k arcs of the cycle, closing arc included.
  std::vector<Arc> arcs() const;
  friend bool operator==(const Cycle&, const Cycle&) = default;
};

//! Bijection on 0..n-1, stored as image[v].
class Permutation {
 public:
  static Permutation identity(int n);
  //! Sends each cycle vertex to its successor and fixes everything else.
  static Permutation from_cycle(int n, const Cycle& cycle);
  //! Throws std::invalid_argument unless `image` is a bijection.
  static Permutation from_images(std::vector<Vertex> image);

  int size() const { return static_cast<int>(image_.size()); }
  Vertex operator()(Vertex v) const { return image_[static_cast<std::size_t>(v)]; }
  const std::vector<Vertex>& images() const { return image_; }
  bool is_identity() const;
  //! Vertices with image != self, ascending.
  std::vector<Vertex> moved() const;
  //! Arcs v -> image(v) for every v, fixed points as loops.
  std::vector<Arc> arcs() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  explicit Permutation(std::vector<Vertex> image) : image_(std::move(image)) {}
  std::vector<Vertex> image_;
};

//! Permutations whose arcs jointly cover a reversible graph. permutations[0]
//! is always the identity and carries every self-loop. cycles[i] lists the
//! disjoint cycles that make up permutations[i] (empty for the identity).
struct CycleCover {
  int n = 0;
  std::vector<Permutation> permutations;
  std::vector<std::vector<Cycle>> cycles;

  std::size_t size() const { return permutations.size(); }
};

//! Cycle whose first arc is from -> to, closed by a breadth-first shortest
//! path back (lowest-index neighbours first). A loop gives the 1-cycle.
//! Throws GraphError if the arc is absent or irreversible.
Cycle cycle_through_arc(const DiGraph& g, Vertex from, Vertex to);

//! Identity first, then one cycle per still-uncovered arc in sorted order.
//! Throws GraphError (listing the irreversible arcs) if g is irreversible.
CycleCover build_cover(const DiGraph& g);

//! Greedily folds each non-identity permutation into the first earlier one
//! whose moved vertices are disjoint from it. The identity is kept alone.
CycleCover merge_disjoint(const CycleCover& cover);

//! Union of the arcs of all permutations, sorted and deduplicated.
std::vector<Arc> covered_arcs(const CycleCover& cover);

//! Every permutation moves vertices only along arcs of g, the identity comes
//! first, the arcs of g are all covered and the count is at most |arcs|.
bool is_valid_cover(const CycleCover& cover, const DiGraph& g);

//! n x n 0/1 matrix with a one at (p(v), v).
ComplexMatrix permutation_matrix(const Permutation& p);

//! {"n": n, "perms": [[...], ...]}
nlohmann::json cover_to_json(const CycleCover& cover);

}  // namespace qwalk

#endif  // QWALK_CYCLECOVER_HPP
