#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "archipelago/generators.hpp"
#include "archipelago/tolerances.hpp"

namespace archipelago {

/// One correlation term t_i * g_a (x) g_b, with 1-based generator labels.
struct GeneratorPair {
  int a = 1;
  int b = 1;
};

/// A cataloged bipartite state family
///   rho(t) = I/(dA dB) + 1/4 * sum_i t_i g^A_{a_i} (x) g^B_{b_i}.
struct ModelSpec {
  std::string name;
  int dim_a = 2;
  int dim_b = 2;
  std::vector<GeneratorPair> terms;
  /// Per-parameter half-widths of a box that contains the physical set.
  std::vector<double> box_half_width;

  std::size_t parameter_count() const { return terms.size(); }
  std::size_t dim() const { return static_cast<std::size_t>(dim_a * dim_b); }
};

/// Validates generator labels against the subsystem dimensions; throws
/// DomainError when a label is out of range.
void validate_model(const ModelSpec& model);

/// Finite real parameter vector.
class ParameterPoint {
 public:
  ParameterPoint() = default;
  explicit ParameterPoint(std::vector<double> t);
  ParameterPoint(std::initializer_list<double> t) : ParameterPoint(std::vector<double>(t)) {}

  std::span<const double> values() const { return t_; }
  std::size_t size() const { return t_.size(); }
  double operator[](std::size_t i) const { return t_[i]; }
  operator std::span<const double>() const { return t_; }  // NOLINT(google-explicit-constructor)

 private:
  std::vector<double> t_;
};

/// The eleven named families, in a fixed order.
const std::vector<ModelSpec>& model_catalog();
/// Throws UnknownName.
const ModelSpec& find_model(std::string_view name);

HermitianMatrix build_state(const ModelSpec& model, std::span<const double> t);

/// k-th entry is det of the top-left (k+1)x(k+1) block. Diagnostic only:
/// nonnegative leading minors do not certify positive semidefiniteness.
Eigen::VectorXd leading_principal_minors(const HermitianMatrix& m);

/// Exhaustive test over all 2^n - 1 principal minors (each >= -tol).
bool all_principal_minors_nonnegative(const HermitianMatrix& m, double tol = 0.0);

double min_eigenvalue(const HermitianMatrix& m);

/// Ground-truth PSD predicate: min eigenvalue >= -tol.
bool is_psd(const HermitianMatrix& m, double tol = tol::kPsd);

/// Transpose on subsystem B: ((i,k),(j,l)) -> ((i,l),(j,k)).
HermitianMatrix partial_transpose(const HermitianMatrix& m, std::size_t dim_a, std::size_t dim_b);

bool is_physical(const ModelSpec& model, std::span<const double> t);
bool is_ppt(const ModelSpec& model, std::span<const double> t);

/// Closed-form physicality for models that have one (qubit_ququart,
/// two_ququart, two_param_qutrit, two_param_ququart); empty otherwise.
std::optional<bool> closed_form_physical(const ModelSpec& model, std::span<const double> t);

/// Precomputed fast evaluator for repeated physical/PPT queries on one model.
///
/// Holds the tensor-product terms and their partial transposes, and decides
/// PSD by attempting a Cholesky factorization of (M + tol I), which succeeds
/// exactly when the minimum eigenvalue exceeds -tol. Not thread-safe: each
/// worker owns a copy.
class ModelEvaluator {
 public:
  explicit ModelEvaluator(const ModelSpec& model, double tol = tol::kPsd);

  const ModelSpec& model() const { return model_; }
  bool physical(std::span<const double> t);
  bool ppt(std::span<const double> t);

 private:
  bool psd_of(const std::vector<Eigen::MatrixXcd>& terms, const std::vector<Eigen::MatrixXd>& real_terms,
              std::span<const double> t);

  ModelSpec model_;
  double tol_;
  std::vector<Eigen::MatrixXcd> terms_;
  std::vector<Eigen::MatrixXcd> pt_terms_;
  Eigen::MatrixXcd work_;
  Eigen::LLT<Eigen::MatrixXcd> llt_;
  // Real copies, used when every term has zero imaginary part.
  bool real_ = false;
  std::vector<Eigen::MatrixXd> real_terms_;
  std::vector<Eigen::MatrixXd> real_pt_terms_;
  Eigen::MatrixXd real_work_;
  Eigen::LLT<Eigen::MatrixXd> real_llt_;
};

}  // namespace archipelago
