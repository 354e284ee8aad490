#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "archipelago/models.hpp"
#include "archipelago/separability.hpp"

namespace archipelago {

/// SplitMix64 finalizer; the counter-based generator behind every sampler.
std::uint64_t mix64(std::uint64_t x);

/// Stateless stream keyed by (seed, key): draw(k) is the k-th uniform in
/// [0, 1). Sample i of a run uses stream (seed, i), so results do not depend
/// on how indices are split across workers.
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint64_t key);
  double uniform(std::uint64_t k) const;

 private:
  std::uint64_t base_;
};

/// A parameter point under evaluation. The PPT test is run at most once,
/// on first request, and shared by every region asked about the same point.
class Sample {
 public:
  Sample(std::span<const double> t, ModelEvaluator& evaluator, std::optional<bool> physical = {});

  std::span<const double> t() const { return t_; }
  bool physical() const;
  bool ppt() const;

 private:
  std::span<const double> t_;
  ModelEvaluator* evaluator_;
  mutable std::optional<bool> physical_;
  mutable std::optional<bool> ppt_;
};

class RegionPredicate {
 public:
  using Fn = std::function<bool(const Sample&)>;

  RegionPredicate(std::string name, std::size_t arity, Fn fn);

  const std::string& name() const { return name_; }
  std::size_t arity() const { return arity_; }
  bool operator()(const Sample& s) const { return fn_(s); }
  /// Convenience for one-off queries; builds a fresh evaluator.
  bool evaluate(const ModelSpec& model, std::span<const double> t) const;

  RegionPredicate operator&&(const RegionPredicate& other) const;
  RegionPredicate operator||(const RegionPredicate& other) const;
  RegionPredicate operator!() const;
  /// this and not other.
  RegionPredicate minus(const RegionPredicate& other) const;
  RegionPredicate renamed(std::string name) const;

 private:
  std::string name_;
  std::size_t arity_;
  Fn fn_;
};

RegionPredicate full_region(std::size_t arity);
RegionPredicate empty_region(std::size_t arity);

/// Named regions of one model. Without thresholds (hadamard_qutrit7) only
/// full, physical, ppt and npt are present.
class RegionSuite {
 public:
  RegionSuite(const ModelSpec& model, std::optional<ThresholdPair> thresholds);

  const ModelSpec& model() const { return model_; }
  const std::optional<ThresholdPair>& thresholds() const { return thresholds_; }
  const std::vector<RegionPredicate>& regions() const { return regions_; }
  bool contains(const std::string& name) const;
  /// Throws UnknownName.
  const RegionPredicate& at(const std::string& name) const;
  std::vector<std::string> names() const;

 private:
  ModelSpec model_;
  std::optional<ThresholdPair> thresholds_;
  std::vector<RegionPredicate> regions_;
};

/// Suite with reference_thresholds(model), or threshold-free for models
/// that have none.
RegionSuite region_suite(const ModelSpec& model);
RegionSuite region_suite(const ModelSpec& model, const ThresholdPair& thresholds);

enum class Method { monte_carlo, grid, closed_form };
const char* method_name(Method m);

struct ProbabilityEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  Method method = Method::monte_carlo;
  /// Samples (or grid cells) inside the region.
  std::uint64_t hits = 0;
};

ProbabilityEstimate closed_form_estimate(double value);

enum class Domain {
  /// Uniform on the physical set (rejection from the bounding box).
  physical_set,
  /// Uniform on the bounding box itself, no physicality conditioning.
  bounding_box,
};

struct SamplingOptions {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  Domain domain = Domain::physical_set;
  /// Per-sample proposal budget before DegenerateRegion is raised.
  std::uint64_t max_proposals = 1'000'000;
};

/// Draws sample `index` of a run: the first physical proposal of stream
/// (seed, index) (or the first proposal for Domain::bounding_box).
/// Throws DegenerateRegion when the proposal budget is exhausted.
std::vector<double> draw_sample(const ModelSpec& model, ModelEvaluator& evaluator,
                                std::uint64_t seed, std::uint64_t index, Domain domain,
                                std::uint64_t max_proposals);

ProbabilityEstimate mc_probability(const ModelSpec& model, const RegionPredicate& region,
                                   const SamplingOptions& options);

/// Evaluates every region on the same sample set.
std::vector<ProbabilityEstimate> mc_probabilities(const ModelSpec& model,
                                                  std::span<const RegionPredicate> regions,
                                                  const SamplingOptions& options);

/// Area fraction over the physical set, counted at the centers of a
/// resolution x resolution grid on the bounding box. Two-parameter models
/// only (ArityError otherwise); resolution >= 100 (DomainError otherwise).
/// std_error is reported as 1/resolution, the order of the boundary-cell error.
ProbabilityEstimate grid_probability(const ModelSpec& model, const RegionPredicate& region,
                                     int resolution);
std::vector<ProbabilityEstimate> grid_probabilities(const ModelSpec& model,
                                                    std::span<const RegionPredicate> regions,
                                                    int resolution);

}  // namespace archipelago
