#include "qwalk/partialwalk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qwalk/graph_io.hpp"

namespace qwalk {

std::string to_string(CoinPolicy policy) { return policy == CoinPolicy::keep ? "keep" : "reset"; }

CoinPolicy parse_coin_policy(const std::string& text) {
  if (text == "keep") return CoinPolicy::keep;
  if (text == "reset") return CoinPolicy::reset;
  throw std::invalid_argument("unknown coin policy '" + text + "' (expected keep or reset)");
}

DiGraph augmented_block_graph(const DiGraph& g, const ReversiblePartition& partition, int block) {
  const auto& block_of = partition.block_of;
  std::vector<Arc> arcs;
  for (const Arc& a : g.arcs()) {
    if (block_of[static_cast<std::size_t>(a.from)] == block &&
        block_of[static_cast<std::size_t>(a.to)] == block) {
      arcs.push_back(a);
    }
  }
  for (const Arc& a : partition.irreversible_arcs) {
    if (block_of[static_cast<std::size_t>(a.from)] == block) {
      arcs.push_back(a);
      arcs.push_back({a.to, a.from});
    }
  }
  return DiGraph(g.size(), arcs);
}

PartialWalk build_partial_walk(const DiGraph& g, const PartialWalkOptions& options) {
  PartialWalk pw;
  pw.n_ = g.size();
  pw.policy_ = options.policy;
  pw.partition_ = reversible_partition(g);
  const int blocks = static_cast<int>(pw.partition_.blocks.size());

  std::vector<CycleCover> covers;
  for (int b = 0; b < blocks; ++b) {
    pw.augmented_.push_back(augmented_block_graph(g, pw.partition_, b));
    CycleCover cover = build_cover(pw.augmented_.back());
    if (options.merge_disjoint) cover = merge_disjoint(cover);
    pw.coin_dim_ = std::max(pw.coin_dim_, static_cast<int>(cover.size()));
    covers.push_back(std::move(cover));
  }

  const ComplexMatrix coin = make_coin(options.coin, pw.coin_dim_);
  for (int b = 0; b < blocks; ++b) {
    auto perms = std::move(covers[static_cast<std::size_t>(b)].permutations);
    perms.resize(static_cast<std::size_t>(pw.coin_dim_), Permutation::identity(pw.n_));
    WalkOperator w(coin, std::move(perms));
    if (!validate_walk(w, pw.augmented_[static_cast<std::size_t>(b)], options.tolerance)) {
      throw std::invalid_argument("coin " + coin_name(options.coin) +
                                  " erases an arc of augmented block " + std::to_string(b));
    }
    pw.walks_.push_back(std::move(w));

    Eigen::VectorXd mask = Eigen::VectorXd::Zero(pw.dim());
    for (Vertex v : pw.partition_.blocks[static_cast<std::size_t>(b)]) {
      for (int c = 0; c < pw.coin_dim_; ++c) mask(c * pw.n_ + v) = 1.0;
    }
    pw.projectors_.push_back(mask.cast<Complex>().asDiagonal().toDenseMatrix());
  }
  return pw;
}

namespace {

void require_dim(const PartialWalk& pw, int dim, const char* who) {
  if (dim != pw.dim()) {
    throw std::invalid_argument(std::string(who) + ": state dimension " + std::to_string(dim) +
                                " != walk dimension " + std::to_string(pw.dim()));
  }
}

ComplexMatrix project(const PartialWalk& pw, const ComplexMatrix& rho, int block) {
  const auto mask = pw.projectors()[static_cast<std::size_t>(block)].diagonal();
  return mask.asDiagonal() * rho * mask.asDiagonal();
}

// |s><s| (x) Tr_coin(sigma), s uniform.
ComplexMatrix reset_coin(const ComplexMatrix& sigma, int coin_dim, int n) {
  ComplexMatrix vertex_part = ComplexMatrix::Zero(n, n);
  for (int c = 0; c < coin_dim; ++c) vertex_part += sigma.block(c * n, c * n, n, n);
  const ComplexMatrix uniform = ComplexMatrix::Constant(coin_dim, coin_dim, 1.0 / coin_dim);
  return kron(uniform, vertex_part);
}

}  // namespace

std::vector<double> branch_weights(const PartialWalk& pw, const DensityMatrix& rho) {
  require_dim(pw, rho.dim(), "branch_weights");
  std::vector<double> weights;
  for (int b = 0; b < pw.block_count(); ++b) {
    const auto mask = pw.projectors()[static_cast<std::size_t>(b)].diagonal();
    weights.push_back((mask.asDiagonal() * rho.entries()).trace().real());
  }
  return weights;
}

Branch conditional_state(const PartialWalk& pw, const DensityMatrix& rho, int block) {
  require_dim(pw, rho.dim(), "conditional_state");
  if (block < 0 || block >= pw.block_count()) {
    throw std::out_of_range("conditional_state: block index out of range");
  }
  ComplexMatrix sigma = project(pw, rho.entries(), block);
  const double weight = sigma.trace().real();
  Branch out{weight, std::nullopt};
  if (weight >= kImpossibleOutcome) out.state = DensityMatrix(sigma / weight);
  return out;
}

ChannelState channel_step(const PartialWalk& pw, const ChannelState& state) {
  require_dim(pw, state.rho.dim(), "channel_step");
  ComplexMatrix next = ComplexMatrix::Zero(pw.dim(), pw.dim());
  for (int b = 0; b < pw.block_count(); ++b) {
    ComplexMatrix sigma = project(pw, state.rho.entries(), b);
    if (sigma.cwiseAbs().maxCoeff() == 0.0) continue;
    if (pw.policy() == CoinPolicy::reset) {
      sigma = reset_coin(sigma, pw.coin_dim(), pw.vertex_count());
    }
    const ComplexMatrix& w = pw.walks()[static_cast<std::size_t>(b)].matrix();
    next += w * sigma * w.adjoint();
  }
  next = (0.5 * (next + next.adjoint())).eval();
  return {DensityMatrix(std::move(next)), state.step_count + 1};
}

std::vector<std::vector<double>> evolve(const PartialWalk& pw, const DensityMatrix& rho0,
                                        std::size_t steps) {
  require_dim(pw, rho0.dim(), "evolve");
  std::vector<std::vector<double>> out;
  ChannelState state{rho0, 0};
  for (std::size_t t = 0;; ++t) {
    out.push_back(vertex_marginal(state.rho, pw.coin_dim(), pw.vertex_count()).diagonal());
    if (t == steps) break;
    state = channel_step(pw, state);
  }
  return out;
}

namespace {

// Index drawn from unnormalized weights that sum to ~1; zero-weight entries
// are never chosen.
std::size_t draw(const std::vector<double>& weights, Rng& rng) {
  const double u = rng.uniform();
  double cumulative = 0.0;
  std::size_t last_possible = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] < kImpossibleOutcome) continue;
    cumulative += weights[i];
    last_possible = i;
    if (u < cumulative) return i;
  }
  return last_possible;
}

}  // namespace

std::vector<TrajectoryStep> sample_trajectory(const PartialWalk& pw, const QuantumState& s0,
                                              std::size_t steps, std::uint64_t seed) {
  require_dim(pw, s0.dim(), "sample_trajectory");
  const int n = pw.vertex_count();
  const int d = pw.coin_dim();
  Rng rng(seed);
  std::vector<TrajectoryStep> record;
  record.reserve(steps);
  ComplexVector psi = s0.amplitudes();

  for (std::size_t t = 0; t < steps; ++t) {
    std::vector<double> weights;
    for (int b = 0; b < pw.block_count(); ++b) {
      const auto mask = pw.projectors()[static_cast<std::size_t>(b)].diagonal();
      weights.push_back(mask.cwiseProduct(psi).squaredNorm());
    }
    const auto outcome = draw(weights, rng);
    ComplexVector collapsed =
        pw.projectors()[outcome].diagonal().cwiseProduct(psi) / std::sqrt(weights[outcome]);

    if (pw.policy() == CoinPolicy::reset) {
      std::vector<double> coin_weights;
      for (int c = 0; c < d; ++c) coin_weights.push_back(collapsed.segment(c * n, n).squaredNorm());
      const auto c = static_cast<int>(draw(coin_weights, rng));
      const ComplexVector vertex_part =
          collapsed.segment(c * n, n) / std::sqrt(coin_weights[static_cast<std::size_t>(c)]);
      const double amp = 1.0 / std::sqrt(static_cast<double>(d));
      for (int k = 0; k < d; ++k) collapsed.segment(k * n, n) = amp * vertex_part;
    }

    psi = pw.walks()[outcome].matrix() * collapsed;
    QuantumState next = QuantumState::normalized(psi);
    psi = next.amplitudes();
    record.push_back({static_cast<int>(outcome), std::move(next)});
  }
  return record;
}

Vertex sample_vertex(const QuantumState& s, int coin_dim, int n, Rng& rng) {
  return static_cast<Vertex>(draw(vertex_distribution(s.amplitudes(), coin_dim, n), rng));
}

nlohmann::json describe_json(const PartialWalk& pw) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& b : pw.partition().blocks) blocks.push_back(b);
  nlohmann::json arcs = nlohmann::json::array();
  for (const Arc& a : pw.partition().irreversible_arcs) arcs.push_back({a.from, a.to});

  nlohmann::json augmented = nlohmann::json::array();
  for (const DiGraph& g : pw.augmented_graphs()) augmented.push_back(adjacency_json(g));

  nlohmann::json measurement = nlohmann::json::array();
  for (int b = 0; b < pw.block_count(); ++b) {
    std::vector<int> indices;
    const auto mask = pw.projectors()[static_cast<std::size_t>(b)].diagonal();
    for (int i = 0; i < pw.dim(); ++i) {
      if (mask(i) != Complex(0.0)) indices.push_back(i);
    }
    measurement.push_back({{"vertices", pw.partition().blocks[static_cast<std::size_t>(b)]},
                           {"indices", indices}});
  }

  nlohmann::json walks = nlohmann::json::array();
  for (const WalkOperator& w : pw.walks()) {
    nlohmann::json perms = nlohmann::json::array();
    for (const Permutation& p : w.permutations()) perms.push_back(p.images());
    walks.push_back({{"perms", std::move(perms)}});
  }

  return {{"n", pw.vertex_count()},
          {"coin_dim", pw.coin_dim()},
          {"coin_policy", to_string(pw.policy())},
          {"blocks", std::move(blocks)},
          {"irreversible_arcs", std::move(arcs)},
          {"augmented", std::move(augmented)},
          {"measurement", std::move(measurement)},
          {"walks", std::move(walks)}};
}

}  // namespace qwalk
