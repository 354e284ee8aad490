#include "archipelago/measure.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "archipelago/errors.hpp"

namespace archipelago {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

CounterStream::CounterStream(std::uint64_t seed, std::uint64_t key)
    : base_(mix64(mix64(seed) ^ (key * 0xd1b54a32d192ed03ULL))) {}

double CounterStream::uniform(std::uint64_t k) const {
  return static_cast<double>(mix64(base_ + k * 0x9e3779b97f4a7c15ULL) >> 11) * 0x1.0p-53;
}

Sample::Sample(std::span<const double> t, ModelEvaluator& evaluator, std::optional<bool> physical)
    : t_(t), evaluator_(&evaluator), physical_(physical) {}

bool Sample::physical() const {
  if (!physical_) physical_ = evaluator_->physical(t_);
  return *physical_;
}

bool Sample::ppt() const {
  if (!ppt_) ppt_ = evaluator_->ppt(t_);
  return *ppt_;
}

RegionPredicate::RegionPredicate(std::string name, std::size_t arity, Fn fn)
    : name_(std::move(name)), arity_(arity), fn_(std::move(fn)) {}

bool RegionPredicate::evaluate(const ModelSpec& model, std::span<const double> t) const {
  if (t.size() != arity_ || model.parameter_count() != arity_) {
    throw ArityError(name_ + ": arity " + std::to_string(arity_) + " vs point of length " +
                     std::to_string(t.size()));
  }
  ModelEvaluator ev(model);
  return fn_(Sample(t, ev));
}

namespace {

void require_same_arity(const RegionPredicate& a, const RegionPredicate& b) {
  if (a.arity() != b.arity()) {
    throw ArityError("cannot combine regions '" + a.name() + "' and '" + b.name() +
                     "' of different arity");
  }
}

}  // namespace

RegionPredicate RegionPredicate::operator&&(const RegionPredicate& other) const {
  require_same_arity(*this, other);
  return {"(" + name_ + " and " + other.name_ + ")", arity_,
          [a = fn_, b = other.fn_](const Sample& s) { return a(s) && b(s); }};
}

RegionPredicate RegionPredicate::operator||(const RegionPredicate& other) const {
  require_same_arity(*this, other);
  return {"(" + name_ + " or " + other.name_ + ")", arity_,
          [a = fn_, b = other.fn_](const Sample& s) { return a(s) || b(s); }};
}

RegionPredicate RegionPredicate::operator!() const {
  return {"not " + name_, arity_, [a = fn_](const Sample& s) { return !a(s); }};
}

RegionPredicate RegionPredicate::minus(const RegionPredicate& other) const {
  require_same_arity(*this, other);
  return {"(" + name_ + " minus " + other.name_ + ")", arity_,
          [a = fn_, b = other.fn_](const Sample& s) { return a(s) && !b(s); }};
}

RegionPredicate RegionPredicate::renamed(std::string name) const {
  return {std::move(name), arity_, fn_};
}

RegionPredicate full_region(std::size_t arity) {
  return {"full", arity, [](const Sample&) { return true; }};
}

RegionPredicate empty_region(std::size_t arity) {
  return {"empty", arity, [](const Sample&) { return false; }};
}

RegionSuite::RegionSuite(const ModelSpec& model, std::optional<ThresholdPair> thresholds)
    : model_(model), thresholds_(std::move(thresholds)) {
  const std::size_t n = model_.parameter_count();
  const RegionPredicate physical{"physical", n, [](const Sample& s) { return s.physical(); }};
  const RegionPredicate ppt{"ppt", n, [](const Sample& s) { return s.ppt(); }};
  regions_ = {full_region(n), physical, ppt, (!ppt).renamed("npt")};
  if (!thresholds_) return;

  const double add = thresholds_->additive;
  const double mult = thresholds_->multiplicative;
  const RegionPredicate ent_add{"ent_add", n, [add](const Sample& s) {
                                  return additive_functional(s.t()) > add;
                                }};
  const RegionPredicate ent_mult{"ent_mult", n, [mult](const Sample& s) {
                                   return multiplicative_functional(s.t()) > mult;
                                 }};
  const auto ent_any = (ent_add || ent_mult).renamed("ent_any");
  regions_.push_back(ent_add);
  regions_.push_back(ent_mult);
  regions_.push_back((ent_add && ent_mult).renamed("ent_both"));
  regions_.push_back(ent_any);
  regions_.push_back(ent_add.minus(ent_mult).renamed("add_only"));
  regions_.push_back(ent_mult.minus(ent_add).renamed("mult_only"));
  regions_.push_back((ppt && ent_any).renamed("bound_any"));
  regions_.push_back((ppt && ent_add).renamed("bound_add"));
  regions_.push_back((ppt && ent_mult).renamed("bound_mult"));
  regions_.push_back((!ppt).renamed("free"));
}

bool RegionSuite::contains(const std::string& name) const {
  return std::any_of(regions_.begin(), regions_.end(),
                     [&](const RegionPredicate& r) { return r.name() == name; });
}

const RegionPredicate& RegionSuite::at(const std::string& name) const {
  for (const auto& r : regions_) {
    if (r.name() == name) return r;
  }
  throw UnknownName(model_.name + ": unknown region '" + name + "'");
}

std::vector<std::string> RegionSuite::names() const {
  std::vector<std::string> out;
  for (const auto& r : regions_) out.push_back(r.name());
  return out;
}

RegionSuite region_suite(const ModelSpec& model) {
  try {
    return RegionSuite(model, reference_thresholds(model));
  } catch (const UnsupportedModel&) {
    return RegionSuite(model, std::nullopt);
  }
}

RegionSuite region_suite(const ModelSpec& model, const ThresholdPair& thresholds) {
  return RegionSuite(model, thresholds);
}

const char* method_name(Method m) {
  switch (m) {
    case Method::monte_carlo: return "monte_carlo";
    case Method::grid: return "grid";
    case Method::closed_form: return "closed_form";
  }
  return "unknown";
}

ProbabilityEstimate closed_form_estimate(double value) {
  return {value, 0.0, 0, 0, Method::closed_form, 0};
}

std::vector<double> draw_sample(const ModelSpec& model, ModelEvaluator& evaluator,
                                std::uint64_t seed, std::uint64_t index, Domain domain,
                                std::uint64_t max_proposals) {
  const std::size_t n = model.parameter_count();
  const CounterStream stream(seed, index);
  std::vector<double> t(n);
  std::uint64_t k = 0;
  for (std::uint64_t proposal = 0; proposal < max_proposals; ++proposal) {
    for (std::size_t i = 0; i < n; ++i) {
      const double h = model.box_half_width[i];
      t[i] = h * (2.0 * stream.uniform(k++) - 1.0);
    }
    if (domain == Domain::bounding_box || evaluator.physical(t)) return t;
  }
  throw DegenerateRegion(model.name + ": no physical point in " + std::to_string(max_proposals) +
                         " bounding-box proposals");
}

namespace {

void check_region_arity(const ModelSpec& model, std::span<const RegionPredicate> regions) {
  for (const auto& r : regions) {
    if (r.arity() != model.parameter_count()) {
      throw ArityError("region '" + r.name() + "' has arity " + std::to_string(r.arity()) +
                       " but " + model.name + " has " + std::to_string(model.parameter_count()) +
                       " parameters");
    }
  }
}

void count_range(const ModelSpec& model, std::span<const RegionPredicate> regions,
                 const SamplingOptions& opt, std::uint64_t begin, std::uint64_t end,
                 std::vector<std::uint64_t>& hits) {
  ModelEvaluator ev(model);
  for (std::uint64_t i = begin; i < end; ++i) {
    const auto t = draw_sample(model, ev, opt.seed, i, opt.domain, opt.max_proposals);
    std::optional<bool> known;
    if (opt.domain == Domain::physical_set) known = true;
    const Sample s(t, ev, known);
    for (std::size_t r = 0; r < regions.size(); ++r) {
      if (regions[r](s)) ++hits[r];
    }
  }
}

}  // namespace

std::vector<ProbabilityEstimate> mc_probabilities(const ModelSpec& model,
                                                  std::span<const RegionPredicate> regions,
                                                  const SamplingOptions& options) {
  if (options.samples < 1) throw DomainError("mc_probabilities: samples must be >= 1");
  check_region_arity(model, regions);
  const unsigned workers =
      std::max(1u, std::min<unsigned>(options.workers, static_cast<unsigned>(std::min<std::uint64_t>(
                                                           options.samples, 1024))));
  std::vector<std::vector<std::uint64_t>> partial(workers,
                                                  std::vector<std::uint64_t>(regions.size(), 0));
  if (workers == 1) {
    count_range(model, regions, options, 0, options.samples, partial[0]);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    const std::uint64_t chunk = options.samples / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t begin = w * chunk;
      const std::uint64_t end = (w + 1 == workers) ? options.samples : begin + chunk;
      pool.emplace_back([&, w, begin, end] {
        try {
          count_range(model, regions, options, begin, end, partial[w]);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  std::vector<ProbabilityEstimate> out;
  const double n = static_cast<double>(options.samples);
  for (std::size_t r = 0; r < regions.size(); ++r) {
    std::uint64_t h = 0;
    for (const auto& p : partial) h += p[r];
    const double v = static_cast<double>(h) / n;
    out.push_back({v, std::sqrt(v * (1.0 - v) / n), options.samples, options.seed,
                   Method::monte_carlo, h});
  }
  return out;
}

ProbabilityEstimate mc_probability(const ModelSpec& model, const RegionPredicate& region,
                                   const SamplingOptions& options) {
  return mc_probabilities(model, std::span<const RegionPredicate>(&region, 1), options)[0];
}

std::vector<ProbabilityEstimate> grid_probabilities(const ModelSpec& model,
                                                    std::span<const RegionPredicate> regions,
                                                    int resolution) {
  if (model.parameter_count() != 2) {
    throw ArityError(model.name + ": grid estimation needs a two-parameter model");
  }
  if (resolution < 100) throw DomainError("grid resolution must be at least 100");
  check_region_arity(model, regions);
  ModelEvaluator ev(model);
  const double hx = model.box_half_width[0];
  const double hy = model.box_half_width[1];
  std::uint64_t physical = 0;
  std::vector<std::uint64_t> hits(regions.size(), 0);
  std::vector<double> t(2);
  for (int i = 0; i < resolution; ++i) {
    t[0] = -hx + (2.0 * i + 1.0) * hx / resolution;
    for (int j = 0; j < resolution; ++j) {
      t[1] = -hy + (2.0 * j + 1.0) * hy / resolution;
      if (!ev.physical(t)) continue;
      ++physical;
      const Sample s(t, ev, true);
      for (std::size_t r = 0; r < regions.size(); ++r) {
        if (regions[r](s)) ++hits[r];
      }
    }
  }
  if (physical == 0) throw DegenerateRegion(model.name + ": grid contains no physical cell");
  std::vector<ProbabilityEstimate> out;
  for (std::size_t r = 0; r < regions.size(); ++r) {
    out.push_back({static_cast<double>(hits[r]) / static_cast<double>(physical), 1.0 / resolution,
                   physical, 0, Method::grid, hits[r]});
  }
  return out;
}

ProbabilityEstimate grid_probability(const ModelSpec& model, const RegionPredicate& region,
                                     int resolution) {
  return grid_probabilities(model, std::span<const RegionPredicate>(&region, 1), resolution)[0];
}

}  // namespace archipelago
