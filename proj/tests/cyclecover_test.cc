#include "qwalk/cyclecover.hpp"

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "qwalk/graph_io.hpp"
#include "test_graphs.hpp"

namespace qwalk {
namespace {

using testing::triangle_graph;

std::vector<Arc> sorted_unique(std::vector<Arc> arcs) {
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  return arcs;
}

// Coverage, legality and bound checked independently of is_valid_cover.
void expect_cover_properties(const CycleCover& cover, const DiGraph& g) {
  ASSERT_FALSE(cover.permutations.empty());
  EXPECT_TRUE(cover.permutations.front().is_identity());
  EXPECT_LE(cover.size(), g.arc_count());
  std::vector<Arc> union_arcs;
  for (const Permutation& p : cover.permutations) {
    ASSERT_EQ(p.size(), g.size());
    for (Vertex v = 0; v < g.size(); ++v) {
      EXPECT_TRUE(g.has_arc(v, p(v))) << to_string({v, p(v)});
      union_arcs.push_back({v, p(v)});
    }
  }
  EXPECT_EQ(sorted_unique(union_arcs), g.arcs());
  EXPECT_TRUE(is_valid_cover(cover, g));
}

TEST(CycleThroughArc, Examples) {
  EXPECT_EQ(cycle_through_arc(triangle_graph(), 2, 1).vertices, (std::vector<Vertex>{2, 1, 0}));
  EXPECT_EQ(cycle_through_arc(triangle_graph(), 0, 0).vertices, (std::vector<Vertex>{0}));
  EXPECT_EQ(cycle_through_arc(directed_cycle(3), 0, 1).vertices, (std::vector<Vertex>{0, 1, 2}));
  EXPECT_EQ(cycle_through_arc(triangle_graph(), 0, 1).vertices, (std::vector<Vertex>{0, 1}));
}

TEST(CycleThroughArc, ArcsCloseTheLoop) {
  const Cycle c{{2, 1, 0}};
  EXPECT_EQ(c.arcs(), (std::vector<Arc>{{2, 1}, {1, 0}, {0, 2}}));
  EXPECT_EQ(Cycle{{3}}.arcs(), (std::vector<Arc>{{3, 3}}));
}

TEST(CycleThroughArc, PrefersShortestThenLowestIndex) {
  // 0->1, then back via 1->2->0 or 1->3->0; also a longer 1->4->5->0.
  const DiGraph g = parse_graph("vertices 6\n0 1\n1 3\n1 2\n1 4\n2 0\n3 0\n4 5\n5 0\n");
  EXPECT_EQ(cycle_through_arc(g, 0, 1).vertices, (std::vector<Vertex>{0, 1, 2}));
}

TEST(CycleThroughArc, Errors) {
  EXPECT_THROW(cycle_through_arc(triangle_graph(), 1, 2), GraphError);
  try {
    cycle_through_arc(testing::two_block_graph(), 0, 1);
    FAIL();
  } catch (const GraphError& e) {
    EXPECT_EQ(e.arcs(), (std::vector<Arc>{{0, 1}}));
  }
}

TEST(BuildCover, TriangleExample) {
  const DiGraph g = triangle_graph();
  const CycleCover cover = build_cover(g);
  expect_cover_properties(cover, g);
  ASSERT_EQ(cover.size(), 4u);
  EXPECT_EQ(cover.permutations[1].images(), (std::vector<Vertex>{1, 0, 2}));
  EXPECT_EQ(cover.permutations[2].images(), (std::vector<Vertex>{2, 1, 0}));
  EXPECT_EQ(cover.permutations[3].images(), (std::vector<Vertex>{2, 0, 1}));
  EXPECT_TRUE(cover.cycles[0].empty());
  EXPECT_EQ(cover.cycles[3], (std::vector<Cycle>{Cycle{{2, 1, 0}}}));
}

TEST(BuildCover, DirectedCycleNeedsTwoCoinStates) {
  for (int n = 2; n <= 7; ++n) {
    const CycleCover cover = build_cover(directed_cycle(n));
    ASSERT_EQ(cover.size(), 2u);
    for (Vertex v = 0; v < n; ++v) EXPECT_EQ(cover.permutations[1](v), (v + 1) % n);
  }
}

TEST(BuildCover, SingleVertex) {
  const CycleCover cover = build_cover(parse_graph("vertices 1\n"));
  ASSERT_EQ(cover.size(), 1u);
  EXPECT_TRUE(cover.permutations[0].is_identity());
}

TEST(BuildCover, IrreversibleGraphListsArcs) {
  try {
    build_cover(testing::two_block_graph());
    FAIL();
  } catch (const GraphError& e) {
    EXPECT_EQ(e.arcs(), (std::vector<Arc>{{0, 1}, {2, 3}}));
  }
}

TEST(BuildCover, PropertiesOnEveryReversibleGraphUpToFourVertices) {
  for (int n = 1; n <= 4; ++n) {
    for (const DiGraph& g : oracle::all_reversible_digraphs(n)) {
      const CycleCover cover = build_cover(g);
      expect_cover_properties(cover, g);
      const CycleCover merged = merge_disjoint(cover);
      expect_cover_properties(merged, g);
      EXPECT_LE(merged.size(), cover.size());
    }
  }
}

TEST(BuildCover, PropertiesOnRandomReversibleGraphs) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const DiGraph g = reversible_subgraph(random_digraph(2 + static_cast<int>(rng() % 20), 0.2, rng()))
                          .with_arcs({});
    const CycleCover cover = build_cover(g);
    expect_cover_properties(cover, g);
    expect_cover_properties(merge_disjoint(cover), g);
  }
}

TEST(BuildCover, Deterministic) {
  const DiGraph g = cayley_zn(7, std::vector<int>{1, 3});
  EXPECT_EQ(cover_to_json(build_cover(g)).dump(), cover_to_json(build_cover(g)).dump());
}

TEST(MergeDisjoint, CombinesDisjointSwaps) {
  const DiGraph g = parse_graph("vertices 4\n0 1\n1 0\n2 3\n3 2\n");
  const CycleCover cover = build_cover(g);
  ASSERT_EQ(cover.size(), 3u);
  const CycleCover merged = merge_disjoint(cover);
  ASSERT_EQ(merged.size(), 2u);
  EXPECT_EQ(merged.permutations[1].images(), (std::vector<Vertex>{1, 0, 3, 2}));
  EXPECT_EQ(merged.cycles[1].size(), 2u);
  expect_cover_properties(merged, g);
}

TEST(MergeDisjoint, TriangleCoverageUnchanged) {
  const CycleCover cover = build_cover(triangle_graph());
  const CycleCover merged = merge_disjoint(cover);
  EXPECT_LE(merged.size(), cover.size());
  EXPECT_EQ(covered_arcs(merged), covered_arcs(cover));
}

TEST(MergeDisjoint, IdentityOnlyIsUnchanged) {
  const CycleCover cover = build_cover(parse_graph("vertices 3\n"));
  const CycleCover merged = merge_disjoint(cover);
  ASSERT_EQ(merged.size(), 1u);
  EXPECT_TRUE(merged.permutations[0].is_identity());
}

TEST(IsValidCover, RejectsBrokenCovers) {
  const DiGraph g = triangle_graph();
  CycleCover cover = build_cover(g);

  CycleCover missing = cover;
  missing.permutations.pop_back();
  missing.cycles.pop_back();
  EXPECT_FALSE(is_valid_cover(missing, g));

  CycleCover reordered = cover;
  std::swap(reordered.permutations[0], reordered.permutations[1]);
  std::swap(reordered.cycles[0], reordered.cycles[1]);
  EXPECT_FALSE(is_valid_cover(reordered, g));

  CycleCover illegal = cover;
  illegal.permutations[1] = Permutation::from_images({1, 2, 0});  // uses 1->2
  illegal.cycles[1] = {Cycle{{0, 1, 2}}};
  EXPECT_FALSE(is_valid_cover(illegal, g));

  CycleCover inconsistent = cover;
  inconsistent.cycles[1] = {Cycle{{0, 2}}};
  EXPECT_FALSE(is_valid_cover(inconsistent, g));
}

TEST(Permutation, FactoriesValidate) {
  EXPECT_THROW(Permutation::from_images({0, 0}), std::invalid_argument);
  EXPECT_THROW(Permutation::from_images({0, 2}), std::invalid_argument);
  EXPECT_THROW(Permutation::from_cycle(3, Cycle{{0, 1, 0}}), std::invalid_argument);
  const Permutation p = Permutation::from_cycle(4, Cycle{{3, 1}});
  EXPECT_EQ(p.images(), (std::vector<Vertex>{0, 3, 2, 1}));
  EXPECT_EQ(p.moved(), (std::vector<Vertex>{1, 3}));
  EXPECT_EQ(p.arcs(), (std::vector<Arc>{{0, 0}, {1, 3}, {2, 2}, {3, 1}}));
}

TEST(PermutationMatrix, Examples) {
  EXPECT_EQ(permutation_matrix(Permutation::identity(4)), ComplexMatrix::Identity(4, 4));
  ComplexMatrix expected = ComplexMatrix::Zero(3, 3);
  expected(1, 0) = expected(2, 1) = expected(0, 2) = 1.0;
  const ComplexMatrix m = permutation_matrix(Permutation::from_cycle(3, Cycle{{0, 1, 2}}));
  EXPECT_EQ(m, expected);
}

TEST(PermutationMatrix, ExactlyUnitary) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Vertex> image(1 + rng() % 9);
    std::iota(image.begin(), image.end(), 0);
    std::shuffle(image.begin(), image.end(), rng);
    EXPECT_TRUE(is_unitary(permutation_matrix(Permutation::from_images(image)), 0.0));
  }
}

TEST(CoverJson, ListsImages) {
  const auto j = cover_to_json(build_cover(directed_cycle(3)));
  EXPECT_EQ(j["n"], 3);
  EXPECT_EQ(j["perms"], nlohmann::json::parse("[[0,1,2],[1,2,0]]"));
}

}  // namespace
}  // namespace qwalk
