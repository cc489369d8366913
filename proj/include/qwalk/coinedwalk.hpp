#ifndef QWALK_COINEDWALK_HPP
#define QWALK_COINEDWALK_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "qwalk/cyclecover.hpp"
#include "qwalk/digraph.hpp"
#include "qwalk/qlinalg.hpp"

namespace qwalk {

struct GroverCoin {};
struct DftCoin {};
struct CustomCoin {
  ComplexMatrix matrix;
};
using CoinKind = std::variant<GroverCoin, DftCoin, CustomCoin>;

std::string coin_name(const CoinKind& kind);

//! 2|s><s| - I with |s> the uniform vector: 2/d - 1 on the diagonal, 2/d off it.
ComplexMatrix grover_coin(int d);

//! F(j, k) = exp(2 pi i j k / d) / sqrt(d).
ComplexMatrix dft_coin(int d);

//! Coin of dimension d. A custom coin must be d x d and unitary within 1e-12.
ComplexMatrix make_coin(const CoinKind& kind, int d);

//! Coined walk W = (sum_k |k><k| (x) P_k) (C (x) I) on the coin-major basis,
//! index(c, v) = c * n + v. Entry <(k,w)|W|(l,v)> = C(k,l) if P_k(v) = w.
class WalkOperator {
 public:
  //! Throws std::invalid_argument if the coin is not unitary, its dimension
  //! differs from the permutation count, or the permutations differ in size.
  WalkOperator(ComplexMatrix coin, std::vector<Permutation> permutations);

  int vertex_count() const { return n_; }
  int coin_dim() const { return static_cast<int>(coin_.rows()); }
  int dim() const { return coin_dim() * n_; }
  int index(int coin, Vertex v) const { return coin * n_ + v; }

  const ComplexMatrix& matrix() const { return matrix_; }
  const ComplexMatrix& coin() const { return coin_; }
  const std::vector<Permutation>& permutations() const { return permutations_; }

 private:
  int n_ = 0;
  ComplexMatrix coin_;
  std::vector<Permutation> permutations_;
  ComplexMatrix matrix_;
};

struct WalkOptions {
  CoinKind coin = GroverCoin{};
  bool merge_disjoint = false;
  double tolerance = kZeroTolerance;
};

//! Cover -> coin -> W, then checks the result against g. Throws GraphError
//! for irreversible g, std::invalid_argument for a bad coin or a coin whose
//! zero pattern erases an arc.
WalkOperator build_walk(const DiGraph& g, const WalkOptions& options = {});

//! v -> w is in g exactly when some <(k,w)|W|(l,v)> exceeds tol in magnitude.
bool validate_walk(const WalkOperator& w, const DiGraph& g, double tol = kZeroTolerance);

//! Arc v -> w iff any coin block entry <(k,w)|W|(l,v)> is nonzero.
DiGraph vertex_support_digraph(const WalkOperator& w, double tol = kZeroTolerance);

QuantumState step(const WalkOperator& w, const QuantumState& s);

//! p(v) = sum_c |amp(c, v)|^2.
std::vector<double> vertex_distribution(const ComplexVector& amplitudes, int coin_dim, int n);

//! Vertex distributions for t = 0..steps.
std::vector<std::vector<double>> simulate(const WalkOperator& w, const QuantumState& s0,
                                          std::size_t steps);

//! Uniform coin superposition at vertex v.
QuantumState uniform_coin_state(int coin_dim, int n, Vertex v);

//! Smallest n in [1, n_max] with |<a|W^n|a>| > 1 - epsilon. Empty when the
//! budget runs out, which says nothing about larger n.
std::optional<std::size_t> recurrence_search(const WalkOperator& w, const QuantumState& a,
                                             double epsilon, std::size_t n_max);

//! For basis indices a, b with |<b|W|a>| > tol, the smallest m in [0, m_max]
//! with |<a|W^m|b>| > tol. Throws std::invalid_argument without the forward
//! amplitude.
std::optional<std::size_t> reverse_amplitude_search(const WalkOperator& w, int a, int b,
                                                    std::size_t m_max,
                                                    double tol = kZeroTolerance);

//! {"matrix": {...}, "metadata": {"n", "d", "perms", ...}}
nlohmann::json walk_to_json(const WalkOperator& w);

}  // namespace qwalk

#endif  // QWALK_COINEDWALK_HPP
