#ifndef QWALK_PARTIALWALK_HPP
#define QWALK_PARTIALWALK_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qwalk/coinedwalk.hpp"
#include "qwalk/digraph.hpp"
#include "qwalk/qlinalg.hpp"
#include "qwalk/random.hpp"

namespace qwalk {

//! What happens to the coin register between the block measurement and the
//! walk step. `keep` leaves it alone; `reset` re-prepares the uniform coin
//! in every branch.
enum class CoinPolicy { keep, reset };

std::string to_string(CoinPolicy policy);
CoinPolicy parse_coin_policy(const std::string& text);

struct PartialWalkOptions {
  CoinKind coin = GroverCoin{};
  CoinPolicy policy = CoinPolicy::keep;
  bool merge_disjoint = false;
  double tolerance = kZeroTolerance;
};

//! Walk on an arbitrary digraph that alternates a measurement of which
//! strongly connected block the walker is in with one step of that block's
//! coined walk. Block i's walk runs on the block plus undirected links along
//! the irreversible arcs leaving it; every walk acts on the full
//! (coin x vertex) space with a common coin dimension.
class PartialWalk {
 public:
  int vertex_count() const { return n_; }
  int coin_dim() const { return coin_dim_; }
  int dim() const { return coin_dim_ * n_; }
  int block_count() const { return static_cast<int>(walks_.size()); }
  CoinPolicy policy() const { return policy_; }

  const ReversiblePartition& partition() const { return partition_; }
  const std::vector<DiGraph>& augmented_graphs() const { return augmented_; }
  const std::vector<WalkOperator>& walks() const { return walks_; }
  //! M_i = I_coin (x) (projector onto block i's vertices).
  const std::vector<ComplexMatrix>& projectors() const { return projectors_; }

 private:
  friend PartialWalk build_partial_walk(const DiGraph& g, const PartialWalkOptions& options);
  PartialWalk() = default;

  int n_ = 0;
  int coin_dim_ = 0;
  CoinPolicy policy_ = CoinPolicy::keep;
  ReversiblePartition partition_;
  std::vector<DiGraph> augmented_;
  std::vector<WalkOperator> walks_;
  std::vector<ComplexMatrix> projectors_;
};

//! Block subgraph of g with loops at every vertex and, for each irreversible
//! arc u -> v whose tail u lies in the block, arcs u -> v and v -> u.
DiGraph augmented_block_graph(const DiGraph& g, const ReversiblePartition& partition, int block);

//! Covers for all blocks are padded with identity permutations up to the
//! largest cover size. A reversible g yields a single block.
PartialWalk build_partial_walk(const DiGraph& g, const PartialWalkOptions& options = {});

struct ChannelState {
  DensityMatrix rho;
  std::size_t step_count = 0;
};

//! Tr(M_i rho) for each block.
std::vector<double> branch_weights(const PartialWalk& pw, const DensityMatrix& rho);

struct Branch {
  double weight = 0.0;
  //! M_i rho M_i / weight; empty when weight < kImpossibleOutcome.
  std::optional<DensityMatrix> state;
};

Branch conditional_state(const PartialWalk& pw, const DensityMatrix& rho, int block);

//! rho -> sum_i W_i R(M_i rho M_i) W_i^dagger, R the identity for `keep`
//! and the coin re-preparation for `reset`.
ChannelState channel_step(const PartialWalk& pw, const ChannelState& state);

//! Vertex distributions (diagonal of the vertex marginal) for t = 0..steps.
std::vector<std::vector<double>> evolve(const PartialWalk& pw, const DensityMatrix& rho0,
                                        std::size_t steps);

struct TrajectoryStep {
  int outcome = 0;     // block index observed before the walk step
  QuantumState state;  // state after the walk step
};

//! One measurement record: sample the block with the Born rule, collapse,
//! apply the coin policy (reset samples the discarded coin value) and step.
std::vector<TrajectoryStep> sample_trajectory(const PartialWalk& pw, const QuantumState& s0,
                                              std::size_t steps, std::uint64_t seed);

//! Draws a vertex from the state's vertex distribution.
Vertex sample_vertex(const QuantumState& s, int coin_dim, int n, Rng& rng);

//! Partition, augmented adjacency matrices, measurement supports and
//! per-block permutations.
nlohmann::json describe_json(const PartialWalk& pw);

}  // namespace qwalk

#endif  // QWALK_PARTIALWALK_HPP
