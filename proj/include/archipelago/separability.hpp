#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "archipelago/generators.hpp"
#include "archipelago/models.hpp"

namespace archipelago {

/// One party of a product decomposition t_i = alpha_i * beta_i: the subsystem
/// dimension and the generator labels it carries (one per model term).
struct ComponentSpec {
  int dim = 2;
  std::vector<int> indices;
};

ComponentSpec component_a(const ModelSpec& model);
ComponentSpec component_b(const ModelSpec& model);

/// (1/d) I + (1/2) sum_i coeffs_i g_{indices_i}.
HermitianMatrix component_state(const ComponentSpec& c, std::span<const double> coeffs);

/// The l+1 product components I/d + sqrt((l+1)/4) sum_i coeffs_i Q_{ik} g_i,
/// k = 0..l, that average (with their partners) to the target correlations.
/// With the 4x4 Hadamard mixer each one is a component_state with the
/// coefficient signs of column k.
std::vector<HermitianMatrix> mixed_components(const ComponentSpec& c, std::span<const double> coeffs,
                                              const OrthogonalMixer& q);

/// All mixed components PSD (tolerance tol::kPsd).
bool component_feasible(const ComponentSpec& c, std::span<const double> coeffs,
                        const OrthogonalMixer& q);

/// Largest r >= 0 with r * direction feasible. The feasible set is convex
/// and contains a ball around 0, so this is the boundary along the ray.
double max_feasible_scale(const ComponentSpec& c, std::span<const double> direction,
                          const OrthogonalMixer& q);

struct ThresholdPair {
  /// max over feasible factorizations of (sum_i |t_i|)^2.
  double additive = 0.0;
  /// max over feasible factorizations of (prod_i t_i)^2.
  double multiplicative = 0.0;
  /// Exact expression when the numeric optimum matched a known closed form.
  std::optional<std::string> additive_form;
  std::optional<std::string> multiplicative_form;
};

struct ThresholdDerivation {
  ThresholdPair thresholds;
  /// Raw optimizer maxima before exact-form snapping.
  double additive_numeric = 0.0;
  double multiplicative_numeric = 0.0;
  std::vector<double> additive_alpha, additive_beta;
  std::vector<double> multiplicative_alpha, multiplicative_beta;
  /// Restarts whose polished value agreed with the best to 1e-6.
  int additive_hits = 0;
  int multiplicative_hits = 0;
  bool converged = false;
};

struct DeriveOptions {
  int restarts = 64;
  std::uint64_t seed = 1;
  /// Overrides the cataloged mixer for the model arity.
  const OrthogonalMixer* mixer = nullptr;
  /// Multiplies every feasible radius; values > 1 enlarge both feasible sets.
  double feasibility_scale = 1.0;
};

/// Multistart maximization of both functionals over the feasible sets of
/// the two components. Supports 2- and 3-parameter models; throws
/// UnsupportedModel otherwise. Deterministic given the seed.
ThresholdDerivation derive_thresholds(const ModelSpec& model, const DeriveOptions& options = {});

/// Same optimization for explicit components (used for sign-flip and
/// monotonicity checks with modified generator sets).
ThresholdDerivation derive_thresholds(const ComponentSpec& a, const ComponentSpec& b,
                                      const DeriveOptions& options = {});

/// Literature values of the corrected thresholds (exact), where known.
std::optional<ThresholdPair> published_thresholds(const std::string& model_name);

/// Thresholds used for region predicates: literature values, with derived
/// ones filling any gap. Throws UnsupportedModel for hadamard_qutrit7.
ThresholdPair reference_thresholds(const ModelSpec& model);

/// Matches x against known closed forms (relative 1e-5) and then against
/// rationals n / (2^a 3^b 5^c) (relative 1e-9). Returns the exact value and
/// its textual form.
std::optional<std::pair<double, std::string>> match_closed_form(double x);

double additive_functional(std::span<const double> t);
double multiplicative_functional(std::span<const double> t);

/// (sum |t_i|)^2 > additive threshold. Throws ArityError on length mismatch.
bool entangled_additive(const ModelSpec& model, const ThresholdPair& th, std::span<const double> t);
bool entangled_multiplicative(const ModelSpec& model, const ThresholdPair& th,
                              std::span<const double> t);
bool entangled_any(const ModelSpec& model, const ThresholdPair& th, std::span<const double> t);

}  // namespace archipelago
