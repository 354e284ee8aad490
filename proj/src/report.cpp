#include "archipelago/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "archipelago/closed_forms.hpp"
#include "archipelago/errors.hpp"
#include "archipelago/separability.hpp"

namespace archipelago {

VerificationRecord make_record(std::string quantity, std::string model, double target,
                               std::string target_form, std::string provenance, double estimate,
                               double std_error, double tolerance) {
  VerificationRecord r{std::move(quantity), std::move(model), target, std::move(target_form),
                       std::move(provenance), estimate, std_error, tolerance, false};
  r.pass = std::abs(estimate - target) <= tolerance;
  return r;
}

double decimal_tolerance(double std_error, double floor) { return std::max(4.0 * std_error, floor); }

double exact_tolerance(double std_error) { return 4.0 * std_error; }

std::size_t VerificationReport::passed() const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const auto& r) { return r.pass; }));
}

nlohmann::ordered_json VerificationReport::to_json() const {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    rows.push_back({{"quantity", r.quantity},
                    {"model", r.model},
                    {"target", r.target},
                    {"target_form", r.target_form},
                    {"provenance", r.provenance},
                    {"estimate", r.estimate},
                    {"std_error", r.std_error},
                    {"tolerance", r.tolerance},
                    {"pass", r.pass}});
  }
  return {{"records", rows}, {"summary", {{"passed", passed()}, {"total", records.size()}}}};
}

namespace {

enum class Kind { exact, decimal };

struct Target {
  std::string quantity;
  std::string region;
  double value;
  std::string form;
  Kind kind;
  double floor = 2e-3;
};

Target exact(std::string q, std::string region, const std::string& closed) {
  const auto& e = closed_form_entry(closed);
  return {std::move(q), std::move(region), e.value, e.expression, Kind::exact};
}

Target exact_value(std::string q, std::string region, double v, std::string form) {
  return {std::move(q), std::move(region), v, std::move(form), Kind::exact};
}

Target decimal(std::string q, std::string region, double v, std::string form, double floor = 2e-3) {
  return {std::move(q), std::move(region), v, std::move(form), Kind::decimal, floor};
}

struct ThresholdTarget {
  std::optional<std::pair<double, std::string>> additive;
  std::optional<std::pair<double, std::string>> multiplicative;
};

ThresholdTarget threshold_targets(const std::string& name) {
  if (name == "qutrit_rho1") return {std::nullopt, std::pair{4096.0 / 387420489, "4096/387420489"}};
  if (name == "qutrit_rho2") return {std::nullopt, std::pair{4096.0 / 14348907, "4096/14348907"}};
  if (name == "qutrit_ququart_npt") return {std::pair{1.0 / 9, "1/9"}, std::pair{1.0 / 531441, "3^-12"}};
  if (const auto p = published_thresholds(name)) {
    return {std::pair{p->additive, *p->additive_form},
            std::pair{p->multiplicative, *p->multiplicative_form}};
  }
  return {};
}

std::vector<Target> region_targets(const std::string& name) {
  if (name == "qubit_ququart") {
    return {exact_value("ppt_fraction", "ppt", 1.0, "1"),
            exact("qq_additive", "ent_add", "qq_additive"),
            exact("qq_multiplicative", "ent_mult", "eq5"),
            decimal("add_only", "add_only", 0.151609, "0.151609"),
            decimal("mult_only", "mult_only", 0.000269161439, "0.000269161439", 5e-5),
            decimal("ent_both", "ent_both", 0.11265766, "0.11265766"),
            decimal("ent_any", "ent_any", 0.276411536, "0.276411536")};
  }
  if (name == "two_ququart") {
    return {exact_value("ppt_fraction", "ppt", 1.0, "1"),
            exact("ent_add", "ent_add", "tq_additive"),
            exact("ent_mult", "ent_mult", "tq_multiplicative"),
            decimal("ent_both", "ent_both", 0.149164132389, "0.149164132389"),
            decimal("ent_any", "ent_any", 0.180702437039, "0.180702437039"),
            decimal("add_only", "add_only", 0.0175025342, "0.0175025342"),
            decimal("mult_only", "mult_only", 0.01403577037231, "0.01403577037231"),
            exact("add_plus_mult", "", "tq_sum")};
  }
  if (name == "two_qubit") {
    return {exact_value("ppt_fraction", "ppt", 0.5, "1/2"),
            exact_value("ent_add", "ent_add", 0.5, "1/2"),
            decimal("ent_mult", "ent_mult", 0.3911855600402, "0.3911855600402"),
            decimal("add_only", "add_only", 0.108814, "0.108814")};
  }
  if (name == "qutrit_rho1") {
    return {decimal("ent_mult", "ent_mult", 0.3911855600402, "0.3911855600402")};
  }
  if (name == "qutrit_rho2") return {exact_value("ent_any", "ent_any", 0.0, "0")};
  if (name == "qutrit_addendum") {
    return {exact("ppt_fraction", "ppt", "addendum_ppt"),
            decimal("ent_mult", "ent_mult", 0.490454, "0.490454"),
            exact("ent_add", "ent_add", "addendum_additive"),
            decimal("bound_mult", "bound_mult", 0.205794, "0.205794"),
            exact("bound_add", "bound_add", "addendum_bound_additive"),
            decimal("ent_any", "ent_any", 0.748599, "0.748599", 5e-3),
            decimal("bound_any", "bound_any", 0.43549, "0.43549", 5e-3)};
  }
  if (name == "qutrit_ququart_npt") {
    return {decimal("ppt_fraction_decimal", "ppt", 0.848826, "0.848826"),
            exact("ppt_fraction_formula", "ppt", "npt_ppt_formula"),
            exact("ent_any", "ent_any", "npt_any"),
            exact("bound_any", "bound_any", "npt_bound"),
            exact_value("mult_only", "mult_only", 0.0, "0"),
            decimal("ent_mult", "ent_mult", 0.304652, "0.304652"),
            decimal("bound_mult", "bound_mult", 0.1706, "0.1706")};
  }
  if (name == "qutrit_ququart_ppt") {
    return {decimal("bound_add", "bound_add", 0.639747, "0.639747"),
            decimal("bound_mult", "bound_mult", 0.185841, "0.185841"),
            exact_value("mult_only", "mult_only", 0.0, "0")};
  }
  if (name == "two_param_qutrit") {
    return {exact("physical_area", "", "tpq_area"),
            exact("bound_any", "bound_any", "tpq_bound"),
            exact("ent_mult", "ent_mult", "tpq_mult"),
            exact("add_only", "add_only", "tpq_add_only"),
            exact_value("mult_only", "mult_only", 0.0, "0")};
  }
  if (name == "two_param_ququart") {
    return {exact("bound_any", "bound_any", "tp4_bound"),
            exact("ent_add", "ent_add", "tp4_additive"),
            exact("ent_mult", "ent_mult", "tp4_mult"),
            exact("mult_only", "mult_only", "tp4_mult_only"),
            exact("add_only", "add_only", "tp4_add_only"),
            exact("mult_only_over_bound_any", "", "tp4_ratio")};
  }
  if (name == "hadamard_qutrit7") {
    return {decimal("ppt_fraction", "ppt", 0.662799194015, "0.662799194015")};
  }
  return {};
}

const char* kind_name(Kind k) { return k == Kind::exact ? "exact" : "decimal"; }

}  // namespace

std::vector<VerificationRecord> verify_model(const ModelSpec& model, const VerifyOptions& options) {
  std::vector<VerificationRecord> out;

  const auto tt = threshold_targets(model.name);
  if (tt.additive || tt.multiplicative) {
    DeriveOptions d;
    d.restarts = options.restarts;
    d.seed = options.seed;
    const auto derived = derive_thresholds(model, d);
    const auto add = [&](const char* q, const std::pair<double, std::string>& target, double estimate) {
      out.push_back(make_record(q, model.name, target.first, target.second,
                                "exact; derived by multistart optimization", estimate, 0.0,
                                1e-5 * std::abs(target.first)));
    };
    if (tt.additive) add("additive_threshold", *tt.additive, derived.thresholds.additive);
    if (tt.multiplicative) {
      add("multiplicative_threshold", *tt.multiplicative, derived.thresholds.multiplicative);
    }
  }

  const auto targets = region_targets(model.name);
  if (targets.empty()) return out;

  const auto suite = region_suite(model);
  const bool grid = model.parameter_count() == 2;
  std::vector<ProbabilityEstimate> est;
  if (grid) {
    est = grid_probabilities(model, suite.regions(), options.grid_resolution);
  } else {
    SamplingOptions s;
    s.samples = options.samples;
    s.seed = options.seed;
    s.workers = options.workers;
    est = mc_probabilities(model, suite.regions(), s);
  }
  const auto by_name = [&](const std::string& r) -> const ProbabilityEstimate& {
    const auto& regions = suite.regions();
    for (std::size_t i = 0; i < regions.size(); ++i) {
      if (regions[i].name() == r) return est[i];
    }
    throw UnknownName(model.name + ": region '" + r + "' missing from suite");
  };
  const std::string method = grid ? "grid" : "monte_carlo";

  for (const auto& t : targets) {
    double value = 0.0;
    double se = 0.0;
    if (t.quantity == "add_plus_mult") {
      const auto& a = by_name("ent_add");
      const auto& m = by_name("ent_mult");
      value = a.value + m.value;
      se = std::hypot(a.std_error, m.std_error);
    } else if (t.quantity == "physical_area") {
      const auto& p = by_name("physical");
      const double cell = 4.0 * model.box_half_width[0] * model.box_half_width[1] /
                          (static_cast<double>(options.grid_resolution) * options.grid_resolution);
      value = static_cast<double>(p.hits) * cell;
      se = p.std_error;
    } else if (t.quantity == "mult_only_over_bound_any") {
      const auto& m = by_name("mult_only");
      const auto& b = by_name("bound_any");
      value = b.hits == 0 ? 0.0 : static_cast<double>(m.hits) / static_cast<double>(b.hits);
      se = m.std_error;
    } else {
      const auto& e = by_name(t.region);
      value = e.value;
      se = e.std_error;
    }
    double tolerance = 0.0;
    if (grid) {
      tolerance = 1e-3;
    } else if (t.kind == Kind::exact) {
      tolerance = exact_tolerance(se);
    } else {
      tolerance = decimal_tolerance(se, t.floor);
    }
    out.push_back(make_record(t.quantity, model.name, t.value, t.form,
                              std::string(kind_name(t.kind)) + "; " + method, value, se, tolerance));
  }
  return out;
}

VerificationReport run_verify(const VerifyOptions& options) {
  std::vector<const ModelSpec*> selected;
  if (options.models.empty()) {
    for (const auto& m : model_catalog()) selected.push_back(&m);
  } else {
    for (const auto& name : options.models) selected.push_back(&find_model(name));
  }
  VerificationReport report;
  for (const auto* m : selected) {
    auto rows = verify_model(*m, options);
    report.records.insert(report.records.end(), rows.begin(), rows.end());
  }
  return report;
}

std::string format_coordinate(double x) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void export_cloud(const ModelSpec& model, const std::string& region_name,
                  const CloudOptions& options, std::ostream& out) {
  const auto suite = region_suite(model);
  const auto& region = suite.at(region_name);
  ModelEvaluator ev(model);
  ModelEvaluator check(model);
  const std::size_t n = model.parameter_count();

  std::vector<std::vector<double>> rows;
  std::uint64_t drawn = 0;
  while (rows.size() < options.points) {
    if (drawn >= options.max_proposals) break;
    auto t = draw_sample(model, ev, options.seed, drawn++, Domain::physical_set, 1'000'000);
    if (region(Sample(t, ev, true))) rows.push_back(std::move(t));
  }
  if (rows.empty() && options.points > 0) {
    throw DegenerateRegion(model.name + ": region '" + region_name + "' had no hit in " +
                           std::to_string(drawn) + " physical samples");
  }
  if (rows.size() < options.points) {
    throw DegenerateRegion(model.name + ": region '" + region_name + "' yielded only " +
                           std::to_string(rows.size()) + " points in " + std::to_string(drawn) +
                           " physical samples");
  }

  // Written coordinates round-trip exactly; re-check the parsed values.
  const auto revalidate = [&](const std::vector<std::string>& text) {
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = std::stod(text[i]);
    if (!region(Sample(t, check))) {
      throw Error("export_cloud: written point failed re-validation for '" + region_name + "'");
    }
  };

  if (options.format == CloudFormat::csv) {
    for (std::size_t i = 0; i < n; ++i) out << 't' << (i + 1) << ',';
    out << "region\n";
    for (const auto& t : rows) {
      std::vector<std::string> text;
      for (double v : t) text.push_back(format_coordinate(v));
      revalidate(text);
      for (const auto& s : text) out << s << ',';
      out << region_name << '\n';
    }
  } else {
    nlohmann::ordered_json j;
    j["model"] = model.name;
    j["region"] = region_name;
    j["seed"] = options.seed;
    auto cols = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < n; ++i) cols.push_back("t" + std::to_string(i + 1));
    j["columns"] = cols;
    auto pts = nlohmann::ordered_json::array();
    for (const auto& t : rows) {
      std::vector<std::string> text;
      for (double v : t) text.push_back(format_coordinate(v));
      revalidate(text);
      pts.push_back(t);
    }
    j["points"] = pts;
    out << j.dump(1) << '\n';
  }
}

ClassCounts render_2d(const ModelSpec& model, int resolution, std::ostream& out,
                      const RenderStyle& style) {
  if (model.parameter_count() != 2) {
    throw ArityError(model.name + ": render_2d needs a two-parameter model");
  }
  if (resolution < 1) throw DomainError("render_2d: resolution must be positive");
  const auto suite = region_suite(model);
  const auto& ent_add = suite.at("ent_add");
  const auto& ent_mult = suite.at("ent_mult");
  ModelEvaluator ev(model);

  static const std::vector<std::string> kClasses = {"nonphysical",     "separable",  "bound_add_only",
                                                    "bound_mult_only", "bound_both", "free"};
  const double hx = model.box_half_width[0];
  const double hy = model.box_half_width[1];
  const double px = static_cast<double>(style.pixels) / resolution;

  // Row-wise runs of equal class become one path segment each.
  std::map<std::string, std::ostringstream> paths;
  ClassCounts counts;
  for (const auto& c : kClasses) counts[c] = 0;
  std::vector<double> t(2);
  for (int row = 0; row < resolution; ++row) {
    // Row 0 is the top of the image, i.e. the largest t2.
    t[1] = hy - (2.0 * row + 1.0) * hy / resolution;
    int run_start = 0;
    std::string run_class;
    for (int col = 0; col <= resolution; ++col) {
      std::string cls;
      if (col < resolution) {
        t[0] = -hx + (2.0 * col + 1.0) * hx / resolution;
        const Sample s(t, ev);
        if (!s.physical()) {
          cls = "nonphysical";
        } else if (!s.ppt()) {
          cls = "free";
        } else {
          const bool a = ent_add(s);
          const bool m = ent_mult(s);
          cls = a && m ? "bound_both" : a ? "bound_add_only" : m ? "bound_mult_only" : "separable";
        }
        ++counts[cls];
      }
      if (col == resolution || cls != run_class) {
        if (col > 0) {
          paths[run_class] << 'M' << run_start * px << ',' << row * px << 'h' << (col - run_start) * px
                           << 'v' << px << 'h' << -(col - run_start) * px << 'z';
        }
        run_start = col;
        run_class = cls;
      }
    }
  }

  const int legend_h = 24 * static_cast<int>(kClasses.size()) + 12;
  const int w = style.pixels;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << w + 200
      << "\" height=\"" << std::max(w, legend_h) << "\" viewBox=\"0 0 " << w + 200 << ' '
      << std::max(w, legend_h) << "\">\n"
      << "<title>" << model.name << " (" << resolution << "x" << resolution << ")</title>\n"
      << "<desc>t1 in [" << -hx << ", " << hx << "], t2 in [" << -hy << ", " << hy << "]</desc>\n";
  for (const auto& c : kClasses) {
    const auto it = style.colors.find(c);
    const std::string color = it == style.colors.end() ? "#000000" : it->second;
    out << "<g class=\"" << c << "\" fill=\"" << color << "\" stroke=\"none\">";
    if (counts[c] > 0) out << "<path d=\"" << paths[c].str() << "\"/>";
    out << "</g>\n";
  }
  out << "<rect x=\"0\" y=\"0\" width=\"" << w << "\" height=\"" << w
      << "\" fill=\"none\" stroke=\"#000000\"/>\n<g class=\"legend\" font-family=\"sans-serif\" "
         "font-size=\"13\">\n";
  int y = 12;
  for (const auto& c : kClasses) {
    const auto it = style.colors.find(c);
    out << "<rect x=\"" << w + 16 << "\" y=\"" << y << "\" width=\"14\" height=\"14\" fill=\""
        << (it == style.colors.end() ? "#000000" : it->second) << "\" stroke=\"#000000\"/>"
        << "<text x=\"" << w + 38 << "\" y=\"" << y + 12 << "\">" << c << "</text>\n";
    y += 24;
  }
  out << "</g>\n</svg>\n";
  return counts;
}

}  // namespace archipelago
