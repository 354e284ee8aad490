#include "archipelago/generators.hpp"

#include <cmath>
#include <string>

#include "archipelago/errors.hpp"
#include "archipelago/tolerances.hpp"

namespace archipelago {

HermitianMatrix::HermitianMatrix(Eigen::MatrixXcd m, double tol) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() < 1) {
    throw ShapeError("HermitianMatrix: expected a non-empty square matrix, got " +
                     std::to_string(m_.rows()) + "x" + std::to_string(m_.cols()));
  }
  for (Eigen::Index r = 0; r < m_.rows(); ++r) {
    for (Eigen::Index c = r; c < m_.cols(); ++c) {
      if (std::abs(m_(r, c) - std::conj(m_(c, r))) > tol) {
        throw DomainError("HermitianMatrix: entry (" + std::to_string(r) + "," +
                          std::to_string(c) + ") breaks Hermiticity");
      }
    }
  }
}

HermitianMatrix HermitianMatrix::identity(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return HermitianMatrix(Eigen::MatrixXcd::Identity(n, n), Unchecked{});
}

HermitianMatrix HermitianMatrix::zero(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return HermitianMatrix(Eigen::MatrixXcd::Zero(n, n), Unchecked{});
}

HermitianMatrix& HermitianMatrix::operator+=(const HermitianMatrix& o) {
  if (o.dim() != dim()) throw ShapeError("HermitianMatrix: dimension mismatch in sum");
  m_ += o.m_;
  return *this;
}

HermitianMatrix operator*(double s, HermitianMatrix a) {
  a.m_ *= s;
  return a;
}

Eigen::VectorXd HermitianMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m_, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

HermitianMatrix kron(const HermitianMatrix& a, const HermitianMatrix& b) {
  const Eigen::Index na = a.m_.rows();
  const Eigen::Index nb = b.m_.rows();
  Eigen::MatrixXcd out(na * nb, na * nb);
  for (Eigen::Index i = 0; i < na; ++i) {
    for (Eigen::Index j = 0; j < na; ++j) {
      out.block(i * nb, j * nb, nb, nb) = a.m_(i, j) * b.m_;
    }
  }
  return HermitianMatrix(std::move(out), HermitianMatrix::Unchecked{});
}

GeneratorBasis::GeneratorBasis(std::size_t dim, std::vector<HermitianMatrix> generators)
    : dim_(dim), generators_(std::move(generators)) {
  if (generators_.size() != dim_ * dim_ - 1) {
    throw ShapeError("GeneratorBasis: expected d^2-1 generators");
  }
  for (std::size_t a = 0; a < generators_.size(); ++a) {
    const auto& ga = generators_[a].matrix();
    if (static_cast<std::size_t>(ga.rows()) != dim_) throw ShapeError("GeneratorBasis: wrong size");
    if (std::abs(ga.trace()) > tol::kHermitian) throw DomainError("GeneratorBasis: not traceless");
    for (std::size_t b = a; b < generators_.size(); ++b) {
      const Complex hs = (ga * generators_[b].matrix()).trace();
      const double expected = a == b ? 2.0 : 0.0;
      if (std::abs(hs - expected) > tol::kAlgebraic) {
        throw DomainError("GeneratorBasis: generators not Hilbert-Schmidt orthogonal");
      }
    }
  }
}

const HermitianMatrix& GeneratorBasis::at(std::size_t index) const {
  if (index < 1 || index > generators_.size()) {
    throw DomainError("generator index " + std::to_string(index) + " outside 1.." +
                      std::to_string(generators_.size()));
  }
  return generators_[index - 1];
}

namespace {

GeneratorBasis make_basis(int d);

}  // namespace

const GeneratorBasis& su_generators(int d) {
  static const GeneratorBasis su2 = [] {
    const Complex i{0.0, 1.0};
    Eigen::MatrixXcd s1(2, 2), s2(2, 2), s3(2, 2);
    s1 << 0, 1, 1, 0;
    s2 << 0, -i, i, 0;
    s3 << 1, 0, 0, -1;
    return GeneratorBasis(2, {HermitianMatrix(s1), HermitianMatrix(s2), HermitianMatrix(s3)});
  }();
  static const GeneratorBasis su3 = make_basis(3);
  static const GeneratorBasis su4 = make_basis(4);
  switch (d) {
    case 2: return su2;
    case 3: return su3;
    case 4: return su4;
    default:
      throw UnsupportedDimension("su_generators: dimension " + std::to_string(d) +
                                 " not in {2, 3, 4}");
  }
}

namespace {

GeneratorBasis make_basis(int d) {
  const Eigen::Index n = d;
  const Complex i{0.0, 1.0};
  std::vector<HermitianMatrix> g;
  g.reserve(static_cast<std::size_t>(d * d - 1));
  for (Eigen::Index k = 1; k < n; ++k) {
    for (Eigen::Index j = 0; j < k; ++j) {
      Eigen::MatrixXcd sym = Eigen::MatrixXcd::Zero(n, n);
      sym(j, k) = sym(k, j) = 1.0;
      g.emplace_back(std::move(sym));
      Eigen::MatrixXcd anti = Eigen::MatrixXcd::Zero(n, n);
      anti(j, k) = -i;
      anti(k, j) = i;
      g.emplace_back(std::move(anti));
    }
    Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(n, n);
    const double norm = std::sqrt(2.0 / static_cast<double>(k * (k + 1)));
    for (Eigen::Index r = 0; r < k; ++r) diag(r, r) = norm;
    diag(k, k) = -static_cast<double>(k) * norm;
    g.emplace_back(std::move(diag));
  }
  return GeneratorBasis(static_cast<std::size_t>(d), std::move(g));
}

}  // namespace
}  // namespace archipelago

namespace archipelago {

bool validate_mixer(const OrthogonalMixer& q, bool require_hadamard) {
  const auto& m = q.entries;
  if (m.rows() != m.cols() || m.rows() < 1) return false;
  const Eigen::Index n = m.rows();
  const Eigen::MatrixXd gram = m * m.transpose();
  if ((gram - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() > tol::kAlgebraic) {
    return false;
  }
  if ((m.row(n - 1).array() < 0.0).any()) return false;
  if (require_hadamard) {
    const double h = 1.0 / std::sqrt(static_cast<double>(n));
    if (((m.cwiseAbs().array() - h).abs() > tol::kAlgebraic).any()) return false;
  }
  return true;
}

const OrthogonalMixer& mixer_q3() {
  static const OrthogonalMixer q = [] {
    Eigen::MatrixXd m(3, 3);
    const double s6 = 1.0 / std::sqrt(6.0), s2 = 1.0 / std::sqrt(2.0), s3 = 1.0 / std::sqrt(3.0);
    m << s6, -std::sqrt(2.0 / 3.0), s6,
         s2, 0.0, -s2,
         s3, s3, s3;
    return OrthogonalMixer{m};
  }();
  return q;
}

const OrthogonalMixer& hadamard4() {
  static const OrthogonalMixer q = [] {
    Eigen::MatrixXd m(4, 4);
    m << 1, -1, -1, 1,
        -1, -1, 1, 1,
        -1, 1, -1, 1,
         1, 1, 1, 1;
    return OrthogonalMixer{0.5 * m};
  }();
  return q;
}

const OrthogonalMixer& hadamard8() {
  static const OrthogonalMixer q = [] {
    Eigen::MatrixXd m(8, 8);
    m << -1, 1, 1, -1, 1, -1, -1, 1,
          1, 1, -1, -1, -1, -1, 1, 1,
          1, -1, 1, -1, -1, 1, -1, 1,
         -1, -1, -1, -1, 1, 1, 1, 1,
          1, -1, -1, 1, 1, -1, -1, 1,
         -1, -1, 1, 1, -1, -1, 1, 1,
         -1, 1, -1, 1, -1, 1, -1, 1,
          1, 1, 1, 1, 1, 1, 1, 1;
    return OrthogonalMixer{m / std::sqrt(8.0)};
  }();
  return q;
}

const OrthogonalMixer& mixer_for_arity(std::size_t l) {
  switch (l) {
    case 2: return mixer_q3();
    case 3: return hadamard4();
    case 7: return hadamard8();
    default:
      throw UnsupportedModel("no cataloged mixer for " + std::to_string(l) + " parameters");
  }
}

}  // namespace archipelago
