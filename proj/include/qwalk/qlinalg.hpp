#ifndef QWALK_QLINALG_HPP
#define QWALK_QLINALG_HPP

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "qwalk/digraph.hpp"

namespace qwalk {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

//! Magnitude below which a matrix entry or amplitude counts as zero.
inline constexpr double kZeroTolerance = 1e-12;
//! Normalization / trace slack for states and density matrices.
inline constexpr double kStateTolerance = 1e-10;
//! Smallest eigenvalue accepted for a density matrix.
inline constexpr double kPsdTolerance = 1e-8;
//! Outcomes with lower probability are reported as impossible.
inline constexpr double kImpossibleOutcome = 1e-14;

//! Unit vector in C^dim.
class QuantumState {
 public:
  //! Throws std::invalid_argument unless |amplitudes| = 1 within 1e-10.
  explicit QuantumState(ComplexVector amplitudes);

  static QuantumState basis(int dim, int index);
  //! Rescales a nonzero vector to unit norm.
  static QuantumState normalized(ComplexVector v);

  int dim() const { return static_cast<int>(amplitudes_.size()); }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  Complex operator[](int i) const { return amplitudes_(i); }

 private:
  ComplexVector amplitudes_;
};

//! Hermitian, unit-trace, positive semidefinite matrix.
class DensityMatrix {
 public:
  //! Validates all three properties; throws std::invalid_argument otherwise.
  explicit DensityMatrix(ComplexMatrix entries);

  static DensityMatrix pure(const QuantumState& state);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const ComplexMatrix& entries() const { return entries_; }
  Complex operator()(int i, int j) const { return entries_(i, j); }
  //! Real parts of the diagonal.
  std::vector<double> diagonal() const;

 private:
  ComplexMatrix entries_;
};

//! Nearest double whose shortest decimal form has at most 15 significant
//! digits. Applied to every number written as JSON.
double round_to_15_digits(double x);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

//! max |(m^dagger m - I)_ij| <= tol. Throws on a non-square matrix.
bool is_unitary(const ComplexMatrix& m, double tol = kZeroTolerance);

//! Digraph whose arc j -> i exists iff |m(i, j)| > tol. No loops are added.
DiGraph support_digraph(const ComplexMatrix& m, double tol = kZeroTolerance);

QuantumState apply(const ComplexMatrix& m, const QuantumState& s);

struct MeasurementOutcome {
  double probability = 0.0;
  //! Post-measurement state; empty when probability < kImpossibleOutcome.
  std::optional<QuantumState> state;
};

//! Throws std::invalid_argument unless the projectors are Hermitian,
//! idempotent, mutually orthogonal and sum to the identity (within 1e-12).
void check_projective_measurement(std::span<const ComplexMatrix> projectors, int dim);

std::vector<MeasurementOutcome> measure(std::span<const ComplexMatrix> projectors,
                                        const QuantumState& s);

//! Partial trace over the coin register of a coin-major (index c * n + v)
//! density matrix, giving the n x n vertex state.
DensityMatrix vertex_marginal(const DensityMatrix& rho, int coin_dim, int n);

//! Tr(rho^2).
double purity(const DensityMatrix& rho);

//! Half the l1 distance between two probability vectors.
double total_variation(std::span<const double> p, std::span<const double> q);

//! Haar-distributed unitary from the QR decomposition of a complex Ginibre
//! matrix with the phases of R's diagonal divided out.
ComplexMatrix random_unitary(int dim, std::uint64_t seed);

//! Random full-rank density matrix G G^dagger / Tr(G G^dagger).
DensityMatrix random_density_matrix(int dim, std::uint64_t seed);

//! {"rows": R, "cols": C, "re": [...], "im": [...]} flattened row-major.
nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

//! Writes "step,vertex,probability" rows, one per (step, vertex), with 15
//! significant digits. distributions[t][v] is the probability at step t.
void write_distribution_csv(std::ostream& out, const std::vector<std::vector<double>>& distributions);

}  // namespace qwalk

#endif  // QWALK_QLINALG_HPP
