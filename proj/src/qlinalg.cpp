#include "qwalk/qlinalg.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <string>

#include "qwalk/random.hpp"

namespace qwalk {

namespace {

void require_square(const ComplexMatrix& m, const char* who) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument(std::string(who) + ": matrix is " + std::to_string(m.rows()) +
                                "x" + std::to_string(m.cols()) + ", expected square");
  }
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// Box-Muller on the portable uniform stream.
Complex complex_gaussian(Rng& rng) {
  const double u1 = 1.0 - rng.uniform();  // (0, 1]
  const double u2 = rng.uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * M_PI * u2;
  return {r * std::cos(theta) / std::sqrt(2.0), r * std::sin(theta) / std::sqrt(2.0)};
}

ComplexMatrix ginibre(int dim, Rng& rng) {
  ComplexMatrix g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) g(i, j) = complex_gaussian(rng);
  }
  return g;
}

}  // namespace

QuantumState::QuantumState(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) throw std::invalid_argument("QuantumState: empty vector");
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > kStateTolerance) {
    throw std::invalid_argument("QuantumState: vector has norm " + std::to_string(norm));
  }
}

QuantumState QuantumState::basis(int dim, int index) {
  if (index < 0 || index >= dim) throw std::out_of_range("QuantumState::basis: index out of range");
  ComplexVector v = ComplexVector::Zero(dim);
  v(index) = 1.0;
  return QuantumState(std::move(v));
}

QuantumState QuantumState::normalized(ComplexVector v) {
  const double norm = v.norm();
  if (!(norm > 0.0)) throw std::invalid_argument("QuantumState::normalized: zero vector");
  v /= norm;
  return QuantumState(std::move(v));
}

DensityMatrix::DensityMatrix(ComplexMatrix entries) : entries_(std::move(entries)) {
  require_square(entries_, "DensityMatrix");
  if (entries_.rows() == 0) throw std::invalid_argument("DensityMatrix: empty matrix");
  if (max_abs(entries_ - entries_.adjoint()) > kStateTolerance) {
    throw std::invalid_argument("DensityMatrix: not Hermitian");
  }
  if (std::abs(entries_.trace() - Complex(1.0)) > kStateTolerance) {
    throw std::invalid_argument("DensityMatrix: trace is not 1");
  }
  const ComplexMatrix hermitian = 0.5 * (entries_ + entries_.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -kPsdTolerance) {
    throw std::invalid_argument("DensityMatrix: not positive semidefinite");
  }
}

DensityMatrix DensityMatrix::pure(const QuantumState& state) {
  return DensityMatrix(state.amplitudes() * state.amplitudes().adjoint());
}

std::vector<double> DensityMatrix::diagonal() const {
  std::vector<double> d(static_cast<std::size_t>(dim()));
  for (int i = 0; i < dim(); ++i) d[static_cast<std::size_t>(i)] = entries_(i, i).real();
  return d;
}

double round_to_15_digits(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return std::strtod(buf, nullptr);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  require_square(m, "is_unitary");
  const ComplexMatrix deviation =
      m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols());
  return max_abs(deviation) <= tol;
}

DiGraph support_digraph(const ComplexMatrix& m, double tol) {
  require_square(m, "support_digraph");
  std::vector<Arc> arcs;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (std::abs(m(i, j)) > tol) arcs.push_back({static_cast<Vertex>(j), static_cast<Vertex>(i)});
    }
  }
  return DiGraph::raw(static_cast<int>(m.rows()), arcs);
}

QuantumState apply(const ComplexMatrix& m, const QuantumState& s) {
  if (m.cols() != s.dim()) {
    throw std::invalid_argument("apply: matrix has " + std::to_string(m.cols()) +
                                " columns, state has dimension " + std::to_string(s.dim()));
  }
  return QuantumState(m * s.amplitudes());
}

void check_projective_measurement(std::span<const ComplexMatrix> projectors, int dim) {
  if (projectors.empty()) throw std::invalid_argument("measurement: no projectors");
  ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
  for (std::size_t i = 0; i < projectors.size(); ++i) {
    const ComplexMatrix& p = projectors[i];
    if (p.rows() != dim || p.cols() != dim) {
      throw std::invalid_argument("measurement: projector " + std::to_string(i) +
                                  " does not match state dimension " + std::to_string(dim));
    }
    if (max_abs(p - p.adjoint()) > kZeroTolerance || max_abs(p * p - p) > kZeroTolerance) {
      throw std::invalid_argument("measurement: operator " + std::to_string(i) +
                                  " is not an orthogonal projector");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (max_abs(p * projectors[j]) > kZeroTolerance) {
        throw std::invalid_argument("measurement: projectors " + std::to_string(j) + " and " +
                                    std::to_string(i) + " overlap");
      }
    }
    sum += p;
  }
  if (max_abs(sum - ComplexMatrix::Identity(dim, dim)) > kZeroTolerance) {
    throw std::invalid_argument("measurement: projectors do not sum to the identity");
  }
}

std::vector<MeasurementOutcome> measure(std::span<const ComplexMatrix> projectors,
                                        const QuantumState& s) {
  check_projective_measurement(projectors, s.dim());
  std::vector<MeasurementOutcome> outcomes;
  outcomes.reserve(projectors.size());
  for (const ComplexMatrix& p : projectors) {
    ComplexVector projected = p * s.amplitudes();
    const double prob = projected.squaredNorm();
    MeasurementOutcome outcome{prob, std::nullopt};
    if (prob >= kImpossibleOutcome) outcome.state = QuantumState(projected / std::sqrt(prob));
    outcomes.push_back(std::move(outcome));
  }
  return outcomes;
}

DensityMatrix vertex_marginal(const DensityMatrix& rho, int coin_dim, int n) {
  if (coin_dim < 1 || n < 1 || rho.dim() != coin_dim * n) {
    throw std::invalid_argument("vertex_marginal: density matrix dimension " +
                                std::to_string(rho.dim()) + " != " + std::to_string(coin_dim) +
                                " * " + std::to_string(n));
  }
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (int c = 0; c < coin_dim; ++c) out += rho.entries().block(c * n, c * n, n, n);
  return DensityMatrix(std::move(out));
}

double purity(const DensityMatrix& rho) {
  // Tr(rho^2) = sum_ij |rho_ij|^2 for Hermitian rho.
  return rho.entries().squaredNorm();
}

double total_variation(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("total_variation: length mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += std::abs(p[i] - q[i]);
  return 0.5 * sum;
}

ComplexMatrix random_unitary(int dim, std::uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("random_unitary: dim must be positive");
  Rng rng(seed);
  const ComplexMatrix g = ginibre(dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return q;
}

DensityMatrix random_density_matrix(int dim, std::uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("random_density_matrix: dim must be positive");
  Rng rng(seed);
  const ComplexMatrix g = ginibre(dim, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace();
  // Exact Hermitian symmetry.
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(std::move(rho));
}

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  std::vector<double> re, im;
  re.reserve(static_cast<std::size_t>(m.size()));
  im.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      re.push_back(round_to_15_digits(m(i, j).real()));
      im.push_back(round_to_15_digits(m(i, j).imag()));
    }
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("re")) {
    throw std::invalid_argument("matrix JSON: expected object with rows, cols, re[, im]");
  }
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  if (rows < 0 || cols < 0) throw std::invalid_argument("matrix JSON: negative dimension");
  const auto re = j.at("re").get<std::vector<double>>();
  const auto im = j.contains("im") ? j.at("im").get<std::vector<double>>()
                                   : std::vector<double>(re.size(), 0.0);
  const auto count = static_cast<std::size_t>(rows * cols);
  if (re.size() != count || im.size() != count) {
    throw std::invalid_argument("matrix JSON: expected " + std::to_string(count) + " entries");
  }
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto k = static_cast<std::size_t>(i * cols + c);
      m(i, c) = Complex(re[k], im[k]);
    }
  }
  return m;
}

void write_distribution_csv(std::ostream& out,
                            const std::vector<std::vector<double>>& distributions) {
  const auto old_precision = out.precision(15);
  out << "step,vertex,probability\n";
  for (std::size_t t = 0; t < distributions.size(); ++t) {
    for (std::size_t v = 0; v < distributions[t].size(); ++v) {
      out << t << ',' << v << ',' << distributions[t][v] << '\n';
    }
  }
  out.precision(old_precision);
}

}  // namespace qwalk
