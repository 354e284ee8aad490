#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace archipelago {

using Complex = std::complex<double>;

/// Dense complex square matrix that is Hermitian by construction.
///
/// Construction from an arbitrary matrix checks squareness and Hermiticity
/// (entrywise to 1e-14 unless a looser tolerance is requested). Every
/// operation in the library that produces a HermitianMatrix preserves the
/// property exactly in floating point, so no re-symmetrization is done.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(Eigen::MatrixXcd m, double tol = 1e-14);

  static HermitianMatrix identity(std::size_t dim);
  static HermitianMatrix zero(std::size_t dim);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return m_; }
  Complex operator()(std::size_t r, std::size_t c) const {
    return m_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }
  Complex trace() const { return m_.trace(); }

  HermitianMatrix& operator+=(const HermitianMatrix& o);
  friend HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix& b) { return a += b; }
  friend HermitianMatrix operator*(double s, HermitianMatrix a);

  /// Ascending real eigenvalues.
  Eigen::VectorXd eigenvalues() const;

 private:
  struct Unchecked {};
  HermitianMatrix(Eigen::MatrixXcd m, Unchecked) : m_(std::move(m)) {}
  friend HermitianMatrix kron(const HermitianMatrix&, const HermitianMatrix&);
  friend HermitianMatrix partial_transpose(const HermitianMatrix&, std::size_t, std::size_t);

  Eigen::MatrixXcd m_;
};

/// Tensor product; entry (i*db + k, j*db + l) = a(i,j) * b(k,l).
HermitianMatrix kron(const HermitianMatrix& a, const HermitianMatrix& b);

/// Ordered generalized Gell-Mann generators of SU(d), normalized Tr(g_i g_j) = 2 delta_ij.
class GeneratorBasis {
 public:
  /// Checks length d^2-1, tracelessness and Tr(g_i g_j) = 2 delta_ij.
  GeneratorBasis(std::size_t dim, std::vector<HermitianMatrix> generators);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return generators_.size(); }
  /// 1-based, matching the conventional lambda_1 ... lambda_{d^2-1} labels.
  const HermitianMatrix& at(std::size_t index) const;
  const std::vector<HermitianMatrix>& generators() const { return generators_; }

 private:
  std::size_t dim_ = 0;
  std::vector<HermitianMatrix> generators_;
};

/// Generators for d in {2, 3, 4}, in the ordering that extends the SU(3)
/// Gell-Mann sequence: for each column k, the pairs (j, k), j < k, each
/// contribute a symmetric then an antisymmetric generator, followed by the
/// k-th diagonal generator. For d = 2 these are the Pauli matrices.
///
/// Throws UnsupportedDimension for any other d. The returned reference is to
/// an immutable process-wide instance.
const GeneratorBasis& su_generators(int d);

/// Real orthogonal (l+1)x(l+1) matrix with a nonnegative last row, used to
/// spread l correlation coefficients over l+1 product components.
struct OrthogonalMixer {
  Eigen::MatrixXd entries;

  std::size_t n() const { return static_cast<std::size_t>(entries.rows()); }
};

/// True iff Q Q^T = I to 1e-12 and the last row is nonnegative; with
/// require_hadamard, additionally every |entry| = 1/sqrt(n).
bool validate_mixer(const OrthogonalMixer& q, bool require_hadamard);

/// The 3x3 mixer used for the two-parameter models.
const OrthogonalMixer& mixer_q3();
/// The 1/2-scaled 4x4 sign matrix (Hadamard).
const OrthogonalMixer& hadamard4();
/// The 1/sqrt(8)-scaled 8x8 Hadamard matrix.
const OrthogonalMixer& hadamard8();
/// The cataloged mixer of size l+1 for l in {2, 3, 7}.
const OrthogonalMixer& mixer_for_arity(std::size_t l);

}  // namespace archipelago
