#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "archipelago/measure.hpp"
#include "archipelago/models.hpp"

namespace archipelago {

struct VerificationRecord {
  std::string quantity;
  std::string model;
  double target = 0.0;
  /// Exact expression, or the literature decimal as printed.
  std::string target_form;
  /// "exact", "decimal" or "derived", plus the estimation method.
  std::string provenance;
  double estimate = 0.0;
  double std_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// pass = |estimate - target| <= tolerance.
VerificationRecord make_record(std::string quantity, std::string model, double target,
                               std::string target_form, std::string provenance, double estimate,
                               double std_error, double tolerance);

/// Tolerance policy: literature decimals get max(4 sigma, floor), exact
/// targets get 4 sigma.
double decimal_tolerance(double std_error, double floor = 2e-3);
double exact_tolerance(double std_error);

struct VerifyOptions {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  int grid_resolution = 4000;
  /// Empty means every cataloged model.
  std::vector<std::string> models;
  int restarts = 64;
};

struct VerificationReport {
  std::vector<VerificationRecord> records;
  std::size_t passed() const;
  bool all_pass() const { return passed() == records.size(); }
  nlohmann::ordered_json to_json() const;
};

/// Threshold derivations and region probabilities for the selected models.
/// Throws UnknownName for an unknown model in the filter.
VerificationReport run_verify(const VerifyOptions& options);
std::vector<VerificationRecord> verify_model(const ModelSpec& model, const VerifyOptions& options);

enum class CloudFormat { csv, json };

struct CloudOptions {
  std::uint64_t points = 20000;
  std::uint64_t seed = 1;
  CloudFormat format = CloudFormat::csv;
  /// Physical samples drawn before the region is declared empty.
  std::uint64_t max_proposals = 100'000'000;
};

/// Writes `points` uniform samples of the named region. Every written row
/// is parsed back and re-checked against the region. Throws
/// DegenerateRegion when the proposal budget yields no hit, UnknownName for
/// an unknown region.
void export_cloud(const ModelSpec& model, const std::string& region, const CloudOptions& options,
                  std::ostream& out);

/// Shortest decimal with 17 significant digits.
std::string format_coordinate(double x);

struct RenderStyle {
  std::map<std::string, std::string> colors = {
      {"nonphysical", "#ffffff"},   {"separable", "#d9d9d9"},
      {"bound_add_only", "#4e79a7"}, {"bound_mult_only", "#e15759"},
      {"bound_both", "#59a14f"},     {"free", "#f28e2b"},
  };
  int pixels = 600;
};

/// Cell counts per class of the last render.
using ClassCounts = std::map<std::string, std::uint64_t>;

/// Classifies a resolution x resolution grid over the bounding box of a
/// two-parameter model and writes an SVG with one group per class and a
/// legend. Throws ArityError for other models.
ClassCounts render_2d(const ModelSpec& model, int resolution, std::ostream& out,
                      const RenderStyle& style = {});

}  // namespace archipelago
