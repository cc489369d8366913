#include "qwalk/coinedwalk.hpp"

#include <cmath>
#include <stdexcept>

namespace qwalk {

std::string coin_name(const CoinKind& kind) {
  if (std::holds_alternative<GroverCoin>(kind)) return "grover";
  if (std::holds_alternative<DftCoin>(kind)) return "dft";
  return "custom";
}

ComplexMatrix grover_coin(int d) {
  if (d < 1) throw std::invalid_argument("grover_coin: d must be at least 1");
  const double off = 2.0 / d;
  ComplexMatrix c = ComplexMatrix::Constant(d, d, Complex(off));
  c.diagonal().setConstant(Complex(off - 1.0));
  return c;
}

ComplexMatrix dft_coin(int d) {
  if (d < 1) throw std::invalid_argument("dft_coin: d must be at least 1");
  ComplexMatrix c(d, d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      // Reduce the exponent first so the angle stays small.
      const double angle = 2.0 * M_PI * static_cast<double>((j * k) % d) / d;
      c(j, k) = std::polar(scale, angle);
    }
  }
  return c;
}

ComplexMatrix make_coin(const CoinKind& kind, int d) {
  if (std::holds_alternative<GroverCoin>(kind)) return grover_coin(d);
  if (std::holds_alternative<DftCoin>(kind)) return dft_coin(d);
  const ComplexMatrix& m = std::get<CustomCoin>(kind).matrix;
  if (m.rows() != d || m.cols() != d) {
    throw std::invalid_argument("custom coin is " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()) + " but the cover needs dimension " +
                                std::to_string(d));
  }
  if (!is_unitary(m, kZeroTolerance)) throw std::invalid_argument("custom coin is not unitary");
  return m;
}

WalkOperator::WalkOperator(ComplexMatrix coin, std::vector<Permutation> permutations)
    : coin_(std::move(coin)), permutations_(std::move(permutations)) {
  if (permutations_.empty()) throw std::invalid_argument("WalkOperator: no permutations");
  if (coin_.rows() != static_cast<Eigen::Index>(permutations_.size()) ||
      coin_.cols() != coin_.rows()) {
    throw std::invalid_argument("WalkOperator: coin dimension does not match permutation count");
  }
  if (!is_unitary(coin_, kZeroTolerance)) {
    throw std::invalid_argument("WalkOperator: coin is not unitary");
  }
  n_ = permutations_.front().size();
  for (const Permutation& p : permutations_) {
    if (p.size() != n_) throw std::invalid_argument("WalkOperator: permutation sizes differ");
  }

  const int d = coin_dim();
  matrix_ = ComplexMatrix::Zero(dim(), dim());
  for (int k = 0; k < d; ++k) {
    const Permutation& p = permutations_[static_cast<std::size_t>(k)];
    for (int l = 0; l < d; ++l) {
      const Complex c = coin_(k, l);
      if (c == Complex(0.0)) continue;
      for (Vertex v = 0; v < n_; ++v) matrix_(index(k, p(v)), index(l, v)) = c;
    }
  }
}

WalkOperator build_walk(const DiGraph& g, const WalkOptions& options) {
  CycleCover cover = build_cover(g);
  if (options.merge_disjoint) cover = merge_disjoint(cover);
  const int d = static_cast<int>(cover.size());
  WalkOperator w(make_coin(options.coin, d), std::move(cover.permutations));
  if (!validate_walk(w, g, options.tolerance)) {
    throw std::invalid_argument("coin " + coin_name(options.coin) +
                                " has a zero pattern that erases an arc of the graph");
  }
  return w;
}

DiGraph vertex_support_digraph(const WalkOperator& w, double tol) {
  const int n = w.vertex_count();
  const int d = w.coin_dim();
  std::vector<Arc> arcs;
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex u = 0; u < n; ++u) {
      bool nonzero = false;
      for (int k = 0; k < d && !nonzero; ++k) {
        for (int l = 0; l < d && !nonzero; ++l) {
          nonzero = std::abs(w.matrix()(w.index(k, u), w.index(l, v))) > tol;
        }
      }
      if (nonzero) arcs.push_back({v, u});
    }
  }
  return DiGraph::raw(n, arcs);
}

bool validate_walk(const WalkOperator& w, const DiGraph& g, double tol) {
  if (w.vertex_count() != g.size()) {
    throw std::invalid_argument("validate_walk: walk has " + std::to_string(w.vertex_count()) +
                                " vertices, graph has " + std::to_string(g.size()));
  }
  return vertex_support_digraph(w, tol).arcs() == g.arcs();
}

QuantumState step(const WalkOperator& w, const QuantumState& s) { return qwalk::apply(w.matrix(), s); }

std::vector<double> vertex_distribution(const ComplexVector& amplitudes, int coin_dim, int n) {
  if (amplitudes.size() != static_cast<Eigen::Index>(coin_dim) * n) {
    throw std::invalid_argument("vertex_distribution: dimension mismatch");
  }
  std::vector<double> p(static_cast<std::size_t>(n), 0.0);
  for (int c = 0; c < coin_dim; ++c) {
    for (int v = 0; v < n; ++v) p[static_cast<std::size_t>(v)] += std::norm(amplitudes(c * n + v));
  }
  return p;
}

std::vector<std::vector<double>> simulate(const WalkOperator& w, const QuantumState& s0,
                                          std::size_t steps) {
  if (s0.dim() != w.dim()) {
    throw std::invalid_argument("simulate: state dimension " + std::to_string(s0.dim()) +
                                " != walk dimension " + std::to_string(w.dim()));
  }
  std::vector<std::vector<double>> out;
  out.reserve(steps + 1);
  ComplexVector x = s0.amplitudes();
  out.push_back(vertex_distribution(x, w.coin_dim(), w.vertex_count()));
  for (std::size_t t = 0; t < steps; ++t) {
    x = w.matrix() * x;
    out.push_back(vertex_distribution(x, w.coin_dim(), w.vertex_count()));
  }
  return out;
}

QuantumState uniform_coin_state(int coin_dim, int n, Vertex v) {
  if (coin_dim < 1 || v < 0 || v >= n) throw std::out_of_range("uniform_coin_state: bad index");
  ComplexVector x = ComplexVector::Zero(static_cast<Eigen::Index>(coin_dim) * n);
  const double amp = 1.0 / std::sqrt(static_cast<double>(coin_dim));
  for (int c = 0; c < coin_dim; ++c) x(c * n + v) = amp;
  return QuantumState(std::move(x));
}

std::optional<std::size_t> recurrence_search(const WalkOperator& w, const QuantumState& a,
                                             double epsilon, std::size_t n_max) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("recurrence_search: epsilon must be > 0");
  if (n_max < 1) throw std::invalid_argument("recurrence_search: n_max must be >= 1");
  if (a.dim() != w.dim()) throw std::invalid_argument("recurrence_search: dimension mismatch");
  ComplexVector x = a.amplitudes();
  for (std::size_t n = 1; n <= n_max; ++n) {
    x = w.matrix() * x;
    if (std::abs(a.amplitudes().dot(x)) > 1.0 - epsilon) return n;
  }
  return std::nullopt;
}

std::optional<std::size_t> reverse_amplitude_search(const WalkOperator& w, int a, int b,
                                                    std::size_t m_max, double tol) {
  if (a < 0 || b < 0 || a >= w.dim() || b >= w.dim()) {
    throw std::out_of_range("reverse_amplitude_search: basis index out of range");
  }
  if (!(std::abs(w.matrix()(b, a)) > tol)) {
    throw std::invalid_argument("reverse_amplitude_search: <b|W|a> is zero");
  }
  ComplexVector x = ComplexVector::Zero(w.dim());
  x(b) = 1.0;
  for (std::size_t m = 0; m <= m_max; ++m) {
    if (std::abs(x(a)) > tol) return m;
    x = w.matrix() * x;
  }
  return std::nullopt;
}

nlohmann::json walk_to_json(const WalkOperator& w) {
  nlohmann::json perms = nlohmann::json::array();
  for (const Permutation& p : w.permutations()) perms.push_back(p.images());
  return {{"matrix", matrix_to_json(w.matrix())},
          {"metadata",
           {{"n", w.vertex_count()},
            {"d", w.coin_dim()},
            {"perms", std::move(perms)},
            {"coin", matrix_to_json(w.coin())}}}};
}

}  // namespace qwalk
