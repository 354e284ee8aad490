#include "archipelago/separability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include <gsl/gsl_multimin.h>

#include "archipelago/errors.hpp"
#include "archipelago/tolerances.hpp"

namespace archipelago {

namespace {

void check_coeffs(const ComponentSpec& c, std::span<const double> coeffs) {
  if (coeffs.size() != c.indices.size()) {
    throw ArityError("component: expected " + std::to_string(c.indices.size()) +
                     " coefficients, got " + std::to_string(coeffs.size()));
  }
}

// Direction matrices M_k(u) = sqrt((l+1)/4) sum_i u_i Q_ik g_i, one per mixer column.
class ComponentGeometry {
 public:
  ComponentGeometry(const ComponentSpec& c, const OrthogonalMixer& q) : dim_(c.dim) {
    const auto l = c.indices.size();
    if (q.n() != l + 1) {
      throw ShapeError("mixer size " + std::to_string(q.n()) + " does not fit " +
                       std::to_string(l) + " coefficients");
    }
    const auto& basis = su_generators(c.dim);
    for (int idx : c.indices) gens_.push_back(basis.at(static_cast<std::size_t>(idx)).matrix());
    weights_ = std::sqrt(static_cast<double>(l + 1) / 4.0) * q.entries.topRows(static_cast<Eigen::Index>(l));
  }

  std::size_t columns() const { return static_cast<std::size_t>(weights_.cols()); }

  Eigen::MatrixXcd direction_matrix(std::span<const double> u, std::size_t k) const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim_, dim_);
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      m += (u[i] * weights_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k))) * gens_[i];
    }
    return m;
  }

  // Largest r with I/d + r M_k(u) >= 0 for every k.
  double max_scale(std::span<const double> u) const {
    double r = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < columns(); ++k) {
      solver_.compute(direction_matrix(u, k), Eigen::EigenvaluesOnly);
      const double lo = solver_.eigenvalues()(0);
      if (lo < 0.0) r = std::min(r, 1.0 / (static_cast<double>(dim_) * -lo));
    }
    return r;
  }

 private:
  int dim_;
  std::vector<Eigen::MatrixXcd> gens_;
  Eigen::MatrixXd weights_;
  mutable Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver_;
};

enum class Objective { kAdditive, kMultiplicative };

struct Problem {
  const ComponentGeometry* a;
  const ComponentGeometry* b;
  std::size_t l;
  Objective objective;
  double scale;
};

// Maps free coordinates (u, v) to boundary points alpha = r_A(u) u/|u|, beta likewise.
bool boundary_point(const Problem& p, const double* x, std::vector<double>& alpha,
                    std::vector<double>& beta) {
  alpha.assign(x, x + p.l);
  beta.assign(x + p.l, x + 2 * p.l);
  for (auto* v : {&alpha, &beta}) {
    const double n = std::sqrt(std::inner_product(v->begin(), v->end(), v->begin(), 0.0));
    if (!(n > 0.0) || !std::isfinite(n)) return false;
    for (double& e : *v) e /= n;
  }
  const double ra = p.scale * p.a->max_scale(alpha);
  const double rb = p.scale * p.b->max_scale(beta);
  if (!std::isfinite(ra) || !std::isfinite(rb)) return false;
  for (double& e : alpha) e *= ra;
  for (double& e : beta) e *= rb;
  return true;
}

// Minimized by GSL. Multiplicative objective is optimized in log space.
double negated_objective(const gsl_vector* x, void* params) {
  const auto& p = *static_cast<const Problem*>(params);
  thread_local std::vector<double> alpha, beta;
  if (!boundary_point(p, x->data, alpha, beta)) return 1e300;
  if (p.objective == Objective::kAdditive) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.l; ++i) s += std::abs(alpha[i] * beta[i]);
    return -s;
  }
  double s = 0.0;
  for (std::size_t i = 0; i < p.l; ++i) {
    const double v = std::abs(alpha[i] * beta[i]);
    if (v == 0.0) return 1e300;
    s += std::log(v);
  }
  return -s;
}

double objective_value(const Problem& p, const std::vector<double>& alpha,
                       const std::vector<double>& beta) {
  std::vector<double> t(p.l);
  for (std::size_t i = 0; i < p.l; ++i) t[i] = alpha[i] * beta[i];
  return p.objective == Objective::kAdditive ? additive_functional(t) : multiplicative_functional(t);
}

// One Nelder-Mead descent from x; returns the final point and minimum.
double nelder_mead(const Problem& p, std::vector<double>& x, double step, int max_iter) {
  const std::size_t n = x.size();
  gsl_multimin_function fn{&negated_objective, n, const_cast<Problem*>(&p)};
  gsl_vector* x0 = gsl_vector_alloc(n);
  gsl_vector* ss = gsl_vector_alloc(n);
  for (std::size_t i = 0; i < n; ++i) gsl_vector_set(x0, i, x[i]);
  gsl_vector_set_all(ss, step);
  gsl_multimin_fminimizer* s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n);
  gsl_multimin_fminimizer_set(s, &fn, x0, ss);
  for (int it = 0; it < max_iter; ++it) {
    if (gsl_multimin_fminimizer_iterate(s) != GSL_SUCCESS) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), 1e-12) == GSL_SUCCESS) break;
  }
  for (std::size_t i = 0; i < n; ++i) x[i] = gsl_vector_get(s->x, i);
  const double f = s->fval;
  gsl_multimin_fminimizer_free(s);
  gsl_vector_free(ss);
  gsl_vector_free(x0);
  return f;
}

// Repeated restarts from the current point until the value stops improving.
double polish(const Problem& p, std::vector<double>& x) {
  double f = nelder_mead(p, x, 0.05, 4000);
  double step = 0.02;
  for (int round = 0; round < 5; ++round) {
    std::vector<double> y = x;
    const double g = nelder_mead(p, y, step, 4000);
    if (g < f - 1e-15 * std::abs(f)) {
      f = g;
      x = std::move(y);
    } else {
      step *= 0.3;
    }
  }
  return f;
}

struct Best {
  double value = -1.0;
  std::vector<double> alpha, beta;
  int hits = 0;
};

Best maximize(const Problem& p, int restarts, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<std::vector<double>> starts;
  // Warm starts: balanced directions with every sign pattern on alpha.
  for (unsigned mask = 0; mask < (1U << p.l); ++mask) {
    std::vector<double> x(2 * p.l, 1.0);
    for (std::size_t i = 0; i < p.l; ++i) {
      if (mask & (1U << i)) x[i] = -1.0;
    }
    starts.push_back(std::move(x));
  }
  for (int r = 0; r < restarts; ++r) {
    std::vector<double> x(2 * p.l);
    for (double& e : x) e = normal(rng);
    starts.push_back(std::move(x));
  }
  // Single descent from every start, then polish the most promising few.
  std::vector<std::pair<double, std::size_t>> ranked;
  for (std::size_t i = 0; i < starts.size(); ++i) {
    ranked.emplace_back(nelder_mead(p, starts[i], 0.2, 3000), i);
  }
  std::sort(ranked.begin(), ranked.end());
  Best best;
  std::vector<double> alpha, beta;
  const std::size_t polished = std::min<std::size_t>(ranked.size(), 6);
  for (std::size_t r = 0; r < polished; ++r) {
    auto& x = starts[ranked[r].second];
    polish(p, x);
    if (!boundary_point(p, x.data(), alpha, beta)) continue;
    const double v = objective_value(p, alpha, beta);
    if (v > best.value) {
      best.value = v;
      best.alpha = alpha;
      best.beta = beta;
    }
  }
  for (const auto& [f, i] : ranked) {
    if (!boundary_point(p, starts[i].data(), alpha, beta)) continue;
    if (std::abs(objective_value(p, alpha, beta) - best.value) <= 1e-6 * best.value) ++best.hits;
  }
  return best;
}

}  // namespace

ComponentSpec component_a(const ModelSpec& model) {
  ComponentSpec c{model.dim_a, {}};
  for (const auto& t : model.terms) c.indices.push_back(t.a);
  return c;
}

ComponentSpec component_b(const ModelSpec& model) {
  ComponentSpec c{model.dim_b, {}};
  for (const auto& t : model.terms) c.indices.push_back(t.b);
  return c;
}

HermitianMatrix component_state(const ComponentSpec& c, std::span<const double> coeffs) {
  check_coeffs(c, coeffs);
  const auto& basis = su_generators(c.dim);
  auto m = (1.0 / c.dim) * HermitianMatrix::identity(static_cast<std::size_t>(c.dim));
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    m += (0.5 * coeffs[i]) * basis.at(static_cast<std::size_t>(c.indices[i]));
  }
  return m;
}

std::vector<HermitianMatrix> mixed_components(const ComponentSpec& c, std::span<const double> coeffs,
                                              const OrthogonalMixer& q) {
  check_coeffs(c, coeffs);
  const ComponentGeometry geo(c, q);
  const Eigen::MatrixXcd id =
      Eigen::MatrixXcd::Identity(c.dim, c.dim) / static_cast<double>(c.dim);
  std::vector<HermitianMatrix> out;
  for (std::size_t k = 0; k < geo.columns(); ++k) {
    out.emplace_back(id + geo.direction_matrix(coeffs, k));
  }
  return out;
}

bool component_feasible(const ComponentSpec& c, std::span<const double> coeffs,
                        const OrthogonalMixer& q) {
  const auto comps = mixed_components(c, coeffs, q);
  return std::all_of(comps.begin(), comps.end(), [](const HermitianMatrix& m) { return is_psd(m); });
}

double max_feasible_scale(const ComponentSpec& c, std::span<const double> direction,
                          const OrthogonalMixer& q) {
  check_coeffs(c, direction);
  return ComponentGeometry(c, q).max_scale(direction);
}

ThresholdDerivation derive_thresholds(const ComponentSpec& a, const ComponentSpec& b,
                                      const DeriveOptions& options) {
  const auto l = a.indices.size();
  if (b.indices.size() != l) throw ArityError("components carry different term counts");
  if (l != 2 && l != 3) {
    throw UnsupportedModel("threshold derivation supports 2 or 3 parameters, got " +
                           std::to_string(l));
  }
  if (options.restarts < 1) throw DomainError("derive_thresholds: restarts must be positive");
  const OrthogonalMixer& q = options.mixer ? *options.mixer : mixer_for_arity(l);
  const ComponentGeometry ga(a, q), gb(b, q);

  ThresholdDerivation out;
  const Problem add{&ga, &gb, l, Objective::kAdditive, options.feasibility_scale};
  const Problem mul{&ga, &gb, l, Objective::kMultiplicative, options.feasibility_scale};
  const Best ba = maximize(add, options.restarts, options.seed);
  const Best bm = maximize(mul, options.restarts, options.seed ^ 0x9e3779b97f4a7c15ULL);

  out.additive_numeric = ba.value;
  out.multiplicative_numeric = bm.value;
  out.additive_alpha = ba.alpha;
  out.additive_beta = ba.beta;
  out.multiplicative_alpha = bm.alpha;
  out.multiplicative_beta = bm.beta;
  out.additive_hits = ba.hits;
  out.multiplicative_hits = bm.hits;
  out.converged = ba.hits >= 2 && bm.hits >= 2;

  out.thresholds.additive = ba.value;
  out.thresholds.multiplicative = bm.value;
  if (auto m = match_closed_form(ba.value)) {
    out.thresholds.additive = m->first;
    out.thresholds.additive_form = m->second;
  }
  if (auto m = match_closed_form(bm.value)) {
    out.thresholds.multiplicative = m->first;
    out.thresholds.multiplicative_form = m->second;
  }
  return out;
}

ThresholdDerivation derive_thresholds(const ModelSpec& model, const DeriveOptions& options) {
  if (model.parameter_count() != 2 && model.parameter_count() != 3) {
    throw UnsupportedModel(model.name + ": threshold derivation is not supported for " +
                           std::to_string(model.parameter_count()) + " parameters");
  }
  return derive_thresholds(component_a(model), component_b(model), options);
}

namespace {

struct KnownForm {
  const char* text;
  double value;
};

const std::vector<KnownForm>& known_forms() {
  static const std::vector<KnownForm> forms = {
      {"(411+41*sqrt(41))/123018750", (411.0 + 41.0 * std::sqrt(41.0)) / 123018750.0},
      {"4096/387420489", 4096.0 / 387420489.0},
      {"4096/14348907", 4096.0 / 14348907.0},
      {"1/531441", 1.0 / 531441.0},
      {"1/6912", 1.0 / 6912.0},
      {"1/65536", 1.0 / 65536.0},
      {"4/19683", 4.0 / 19683.0},
      {"1/2304", 1.0 / 2304.0},
      {"16/6561", 16.0 / 6561.0},
      {"1/729", 1.0 / 729.0},
      {"49/576", 49.0 / 576.0},
      {"16/81", 16.0 / 81.0},
      {"1/9", 1.0 / 9.0},
      {"2/9", 2.0 / 9.0},
      {"1/4", 0.25},
      {"1/2", 0.5},
      {"1", 1.0},
  };
  return forms;
}

std::string rational_text(long long n, long long d) {
  const long long g = std::gcd(n, d);
  n /= g;
  d /= g;
  return d == 1 ? std::to_string(n) : std::to_string(n) + "/" + std::to_string(d);
}

}  // namespace

std::optional<std::pair<double, std::string>> match_closed_form(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) return std::nullopt;
  for (const auto& f : known_forms()) {
    if (std::abs(x - f.value) <= 1e-5 * f.value) return std::pair{f.value, std::string(f.text)};
  }
  std::vector<long long> dens;
  for (long long p2 = 1; p2 <= (1LL << 40); p2 *= 2) {
    for (long long p3 = 1; p3 <= 3486784401LL; p3 *= 3) {
      for (long long p5 = 1; p5 <= 9765625LL; p5 *= 5) {
        const long double d = static_cast<long double>(p2) * p3 * p5;
        if (d < 1e15L) dens.push_back(p2 * p3 * p5);
      }
    }
  }
  std::sort(dens.begin(), dens.end());
  for (long long d : dens) {
    const double n = std::round(x * static_cast<double>(d));
    if (n < 1.0 || n > 8192.0) continue;
    const double v = n / static_cast<double>(d);
    if (std::abs(v - x) <= 1e-9 * x) {
      return std::pair{v, rational_text(static_cast<long long>(n), d)};
    }
  }
  return std::nullopt;
}

std::optional<ThresholdPair> published_thresholds(const std::string& model_name) {
  const auto pair = [](double a, const char* af, double m, const char* mf) {
    return ThresholdPair{a, m, std::string(af), std::string(mf)};
  };
  if (model_name == "qubit_ququart") return pair(0.5, "1/2", 1.0 / 6912, "1/6912");
  if (model_name == "two_ququart") return pair(0.25, "1/4", 1.0 / 65536, "1/65536");
  if (model_name == "two_qubit") return pair(1.0, "1", 1.0 / 729, "1/729");
  if (model_name == "qutrit_addendum") {
    return pair(16.0 / 81, "16/81", 4096.0 / 387420489, "4096/387420489");
  }
  if (model_name == "qutrit_ququart_npt") return pair(1.0 / 9, "1/9", 1.0 / 531441, "1/531441");
  if (model_name == "qutrit_ququart_ppt") {
    return pair(1.0 / 9, "1/9", (411.0 + 41.0 * std::sqrt(41.0)) / 123018750.0,
                "(411+41*sqrt(41))/123018750");
  }
  if (model_name == "two_param_qutrit") return pair(16.0 / 81, "16/81", 16.0 / 6561, "16/6561");
  if (model_name == "two_param_ququart") return pair(49.0 / 576, "49/576", 1.0 / 2304, "1/2304");
  return std::nullopt;
}

ThresholdPair reference_thresholds(const ModelSpec& model) {
  if (auto p = published_thresholds(model.name)) return *p;
  // Only the multiplicative bound is known for the two octahedral/tetrahedral
  // qutrit models; the additive bound comes from the optimizer.
  if (model.name == "qutrit_rho1" || model.name == "qutrit_rho2") {
    const auto derived = derive_thresholds(model);
    ThresholdPair th = derived.thresholds;
    if (model.name == "qutrit_rho1") {
      th.multiplicative = 4096.0 / 387420489;
      th.multiplicative_form = "4096/387420489";
    } else {
      th.multiplicative = 4096.0 / 14348907;
      th.multiplicative_form = "4096/14348907";
    }
    return th;
  }
  throw UnsupportedModel(model.name + ": no entanglement thresholds available");
}

double additive_functional(std::span<const double> t) {
  double s = 0.0;
  for (double v : t) s += std::abs(v);
  return s * s;
}

double multiplicative_functional(std::span<const double> t) {
  double p = 1.0;
  for (double v : t) p *= v;
  return p * p;
}

namespace {

void check_model_arity(const ModelSpec& model, std::span<const double> t) {
  if (t.size() != model.parameter_count()) {
    throw ArityError(model.name + ": expected " + std::to_string(model.parameter_count()) +
                     " parameters, got " + std::to_string(t.size()));
  }
}

}  // namespace

bool entangled_additive(const ModelSpec& model, const ThresholdPair& th, std::span<const double> t) {
  check_model_arity(model, t);
  return additive_functional(t) > th.additive;
}

bool entangled_multiplicative(const ModelSpec& model, const ThresholdPair& th,
                              std::span<const double> t) {
  check_model_arity(model, t);
  return multiplicative_functional(t) > th.multiplicative;
}

bool entangled_any(const ModelSpec& model, const ThresholdPair& th, std::span<const double> t) {
  return entangled_additive(model, th, t) || entangled_multiplicative(model, th, t);
}

}  // namespace archipelago
