#include "archipelago/models.hpp"

#include <cmath>
#include <string>

#include "archipelago/errors.hpp"

namespace archipelago {

namespace {

void check_arity(const ModelSpec& model, std::span<const double> t) {
  if (t.size() != model.parameter_count()) {
    throw ArityError(model.name + ": expected " + std::to_string(model.parameter_count()) +
                     " parameters, got " + std::to_string(t.size()));
  }
}

ModelSpec make(std::string name, int da, int db, std::vector<GeneratorPair> terms,
               std::vector<double> half_width) {
  ModelSpec m{std::move(name), da, db, std::move(terms), std::move(half_width)};
  validate_model(m);
  return m;
}

std::vector<GeneratorPair> diagonal_terms(std::initializer_list<int> idx) {
  std::vector<GeneratorPair> out;
  for (int i : idx) out.push_back({i, i});
  return out;
}

}  // namespace

void validate_model(const ModelSpec& model) {
  const auto check = [&](int label, int d) {
    if (label < 1 || label > d * d - 1) {
      throw DomainError(model.name + ": generator label " + std::to_string(label) +
                        " out of range for dimension " + std::to_string(d));
    }
  };
  for (const auto& term : model.terms) {
    check(term.a, model.dim_a);
    check(term.b, model.dim_b);
  }
  if (model.box_half_width.size() != model.terms.size()) {
    throw ShapeError(model.name + ": bounding box arity differs from parameter count");
  }
}

ParameterPoint::ParameterPoint(std::vector<double> t) : t_(std::move(t)) {
  for (double v : t_) {
    if (!std::isfinite(v)) throw DomainError("ParameterPoint: non-finite coordinate");
  }
}

// Box half-widths are the exact coordinate extrema of each physical set
// (t_k = Tr(rho g_a (x) g_b) maximized over the spectrahedron).
const std::vector<ModelSpec>& model_catalog() {
  static const std::vector<ModelSpec> catalog = [] {
    const double h3 = 4.0 / 9.0;
    const double h7 = 2.0 * (1.0 + std::sqrt(2.0)) / 9.0;
    std::vector<ModelSpec> c;
    c.push_back(make("qubit_ququart", 2, 4, {{1, 1}, {2, 13}, {3, 3}}, {0.5, 0.5, 0.5}));
    c.push_back(make("two_ququart", 4, 4, diagonal_terms({1, 13, 3}), {0.25, 0.25, 0.25}));
    c.push_back(make("two_qubit", 2, 2, diagonal_terms({1, 2, 3}), {1.0, 1.0, 1.0}));
    c.push_back(make("qutrit_rho1", 3, 3, diagonal_terms({1, 2, 3}), {h3, h3, h3}));
    c.push_back(make("qutrit_rho2", 3, 3, {{1, 1}, {2, 4}, {3, 6}}, {h3, h3, h3}));
    c.push_back(make("qutrit_addendum", 3, 3, diagonal_terms({2, 4, 6}), {h3, h3, h3}));
    c.push_back(make("qutrit_ququart_npt", 3, 4, {{4, 1}, {6, 6}, {7, 10}},
                     {1.0 / 3, 1.0 / 3, 1.0 / 3}));
    c.push_back(make("qutrit_ququart_ppt", 3, 4, {{2, 1}, {3, 3}, {5, 13}},
                     {1.0 / 3, 1.0 / 3, 1.0 / 3}));
    c.push_back(make("two_param_qutrit", 3, 3, diagonal_terms({1, 4}), {h3, h3}));
    c.push_back(make("two_param_ququart", 4, 4, diagonal_terms({7, 9}), {0.25, 0.25}));
    c.push_back(make("hadamard_qutrit7", 3, 3, diagonal_terms({1, 2, 3, 4, 5, 6, 7}),
                     {h3, h3, h3, h7, h7, h7, h7}));
    return c;
  }();
  return catalog;
}

const ModelSpec& find_model(std::string_view name) {
  for (const auto& m : model_catalog()) {
    if (m.name == name) return m;
  }
  throw UnknownName("unknown model '" + std::string(name) + "'");
}

HermitianMatrix build_state(const ModelSpec& model, std::span<const double> t) {
  check_arity(model, t);
  const auto& ga = su_generators(model.dim_a);
  const auto& gb = su_generators(model.dim_b);
  HermitianMatrix rho = (1.0 / static_cast<double>(model.dim())) * HermitianMatrix::identity(model.dim());
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto& term = model.terms[i];
    rho += (0.25 * t[i]) * kron(ga.at(static_cast<std::size_t>(term.a)),
                                gb.at(static_cast<std::size_t>(term.b)));
  }
  return rho;
}

Eigen::VectorXd leading_principal_minors(const HermitianMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.dim());
  Eigen::VectorXd out(n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    out(k - 1) = m.matrix().topLeftCorner(k, k).determinant().real();
  }
  return out;
}

bool all_principal_minors_nonnegative(const HermitianMatrix& m, double tol) {
  const auto n = static_cast<Eigen::Index>(m.dim());
  if (n > 20) throw ShapeError("principal-minor enumeration limited to dimension 20");
  std::vector<Eigen::Index> idx;
  for (unsigned long mask = 1; mask < (1UL << n); ++mask) {
    idx.clear();
    for (Eigen::Index i = 0; i < n; ++i) {
      if (mask & (1UL << i)) idx.push_back(i);
    }
    const auto k = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXcd sub(k, k);
    for (Eigen::Index r = 0; r < k; ++r) {
      for (Eigen::Index c = 0; c < k; ++c) sub(r, c) = m.matrix()(idx[r], idx[c]);
    }
    if (sub.determinant().real() < -tol) return false;
  }
  return true;
}

double min_eigenvalue(const HermitianMatrix& m) { return m.eigenvalues()(0); }

bool is_psd(const HermitianMatrix& m, double tol) { return min_eigenvalue(m) >= -tol; }

HermitianMatrix partial_transpose(const HermitianMatrix& m, std::size_t dim_a, std::size_t dim_b) {
  if (dim_a * dim_b != m.dim() || dim_a == 0) {
    throw ShapeError("partial_transpose: " + std::to_string(m.dim()) + " != " +
                     std::to_string(dim_a) + " x " + std::to_string(dim_b));
  }
  const auto da = static_cast<Eigen::Index>(dim_a);
  const auto db = static_cast<Eigen::Index>(dim_b);
  Eigen::MatrixXcd out(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index j = 0; j < da; ++j) {
      out.block(i * db, j * db, db, db) = m.m_.block(i * db, j * db, db, db).transpose();
    }
  }
  return HermitianMatrix(std::move(out), HermitianMatrix::Unchecked{});
}

bool is_physical(const ModelSpec& model, std::span<const double> t) {
  return is_psd(build_state(model, t));
}

bool is_ppt(const ModelSpec& model, std::span<const double> t) {
  const auto rho = build_state(model, t);
  return is_psd(partial_transpose(rho, static_cast<std::size_t>(model.dim_a),
                                  static_cast<std::size_t>(model.dim_b)));
}

std::optional<bool> closed_form_physical(const ModelSpec& model, std::span<const double> t) {
  check_arity(model, t);
  if (model.name == "qubit_ququart") {
    const double s = std::abs(t[0]) + std::abs(t[2]);
    return t[1] * t[1] <= 0.25 && s * s <= 0.25;
  }
  if (model.name == "two_ququart") {
    return std::abs(t[0]) <= 0.25 && std::abs(t[1]) <= 0.25 && std::abs(t[2]) <= 0.25;
  }
  if (model.name == "two_param_qutrit") {
    return 16.0 - 81.0 * t[0] * t[0] - 81.0 * t[1] * t[1] >= 0.0;
  }
  if (model.name == "two_param_ququart") {
    return std::abs(t[0]) <= 0.25 && std::abs(t[1]) <= 0.25;
  }
  return std::nullopt;
}

ModelEvaluator::ModelEvaluator(const ModelSpec& model, double tol)
    : model_(model), tol_(tol) {
  validate_model(model_);
  const auto& ga = su_generators(model_.dim_a);
  const auto& gb = su_generators(model_.dim_b);
  for (const auto& term : model_.terms) {
    const auto k = kron(ga.at(static_cast<std::size_t>(term.a)), gb.at(static_cast<std::size_t>(term.b)));
    terms_.push_back(0.25 * k.matrix());
    pt_terms_.push_back(
        0.25 * partial_transpose(k, static_cast<std::size_t>(model_.dim_a),
                                 static_cast<std::size_t>(model_.dim_b)).matrix());
  }
  const auto n = static_cast<Eigen::Index>(model_.dim());
  work_.resize(n, n);
  llt_ = Eigen::LLT<Eigen::MatrixXcd>(n);

  real_ = true;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    real_ = real_ && terms_[i].imag().isZero(0.0) && pt_terms_[i].imag().isZero(0.0);
  }
  if (real_) {
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      real_terms_.push_back(terms_[i].real());
      real_pt_terms_.push_back(pt_terms_[i].real());
    }
    real_work_.resize(n, n);
    real_llt_ = Eigen::LLT<Eigen::MatrixXd>(n);
  }
}

bool ModelEvaluator::psd_of(const std::vector<Eigen::MatrixXcd>& terms,
                            const std::vector<Eigen::MatrixXd>& real_terms, std::span<const double> t) {
  check_arity(model_, t);
  const auto n = static_cast<Eigen::Index>(model_.dim());
  if (real_) {
    real_work_.setZero();
    real_work_.diagonal().setConstant(1.0 / static_cast<double>(n) + tol_);
    for (std::size_t i = 0; i < real_terms.size(); ++i) real_work_ += t[i] * real_terms[i];
    real_llt_.compute(real_work_);
    return real_llt_.info() == Eigen::Success;
  }
  work_.setZero();
  work_.diagonal().setConstant(Complex(1.0 / static_cast<double>(n) + tol_, 0.0));
  for (std::size_t i = 0; i < terms.size(); ++i) work_ += t[i] * terms[i];
  llt_.compute(work_);
  return llt_.info() == Eigen::Success;
}

bool ModelEvaluator::physical(std::span<const double> t) { return psd_of(terms_, real_terms_, t); }

bool ModelEvaluator::ppt(std::span<const double> t) { return psd_of(pt_terms_, real_pt_terms_, t); }

}  // namespace archipelago
