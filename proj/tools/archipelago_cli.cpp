// Command-line front end: verify, derive-thresholds, prob, export-cloud, render-2d.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "archipelago/errors.hpp"
#include "archipelago/measure.hpp"
#include "archipelago/report.hpp"
#include "archipelago/separability.hpp"

namespace ar = archipelago;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kUsage = 2;

struct Globals {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 1;
  std::vector<std::string> models;
  std::string out;
  std::string format;
  unsigned workers = 1;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw ar::Error("cannot open '" + path + "' for writing");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

const ar::ModelSpec& single_model(const Globals& g) {
  if (g.models.size() != 1) throw CLI::ValidationError("--model", "exactly one model is required");
  return ar::find_model(g.models.front());
}

ordered_json threshold_json(const ar::ModelSpec& m, const ar::ThresholdDerivation& d) {
  ordered_json j;
  j["model"] = m.name;
  j["additive"] = d.thresholds.additive;
  j["additive_form"] = d.thresholds.additive_form.value_or("");
  j["additive_numeric"] = d.additive_numeric;
  j["additive_hits"] = d.additive_hits;
  j["multiplicative"] = d.thresholds.multiplicative;
  j["multiplicative_form"] = d.thresholds.multiplicative_form.value_or("");
  j["multiplicative_numeric"] = d.multiplicative_numeric;
  j["multiplicative_hits"] = d.multiplicative_hits;
  j["converged"] = d.converged;
  if (const auto p = ar::published_thresholds(m.name)) {
    j["literature"] = {{"additive", p->additive}, {"multiplicative", p->multiplicative}};
  }
  return j;
}

std::map<std::string, std::string> parse_colors(const std::vector<std::string>& specs) {
  std::map<std::string, std::string> out;
  for (const auto& s : specs) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw CLI::ValidationError("--color", "expected CLASS=COLOR");
    out[s.substr(0, eq)] = s.substr(eq + 1);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Separability thresholds and entanglement-region probabilities"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--samples", g.samples, "Monte Carlo samples")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--model", g.models, "Model name (repeatable)");
  app.add_option("--out", g.out, "Output file (default stdout)");
  app.add_option("--format", g.format, "Output format");
  app.add_option("--workers", g.workers, "Sampling threads")->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "Check every cataloged constant");
  verify->fallthrough();
  int resolution = 4000;
  int restarts = 64;
  verify->add_option("--resolution", resolution, "Grid resolution for two-parameter models")
      ->check(CLI::Range(100, 100000));
  verify->add_option("--restarts", restarts, "Optimizer restarts")->check(CLI::Range(64, 100000));

  auto* derive = app.add_subcommand("derive-thresholds", "Derive the separability thresholds");
  derive->fallthrough();
  derive->add_option("--restarts", restarts, "Optimizer restarts")->check(CLI::Range(64, 100000));

  auto* prob = app.add_subcommand("prob", "Estimate region probabilities for one model");
  prob->fallthrough();
  std::vector<std::string> regions;
  std::string method = "mc";
  std::string domain = "physical";
  prob->add_option("--region", regions, "Region name (repeatable; default all)");
  prob->add_option("--method", method, "mc or grid")->check(CLI::IsMember({"mc", "grid"}));
  prob->add_option("--resolution", resolution, "Grid resolution")->check(CLI::Range(100, 100000));
  prob->add_option("--domain", domain, "Sampling measure: physical set or bounding box")
      ->check(CLI::IsMember({"physical", "box"}));

  auto* cloud = app.add_subcommand("export-cloud", "Write uniform samples of one region");
  cloud->fallthrough();
  std::string region;
  std::uint64_t points = 20000;
  std::uint64_t max_proposals = 100'000'000;
  cloud->add_option("--region", region, "Region name")->required();
  cloud->add_option("--points", points, "Number of points")->check(CLI::NonNegativeNumber);
  cloud->add_option("--max-proposals", max_proposals, "Physical samples before giving up")
      ->check(CLI::PositiveNumber);

  auto* render = app.add_subcommand("render-2d", "SVG class map of a two-parameter model");
  render->fallthrough();
  int render_resolution = 400;
  int pixels = 600;
  std::vector<std::string> colors;
  render->add_option("--resolution", render_resolution, "Cells per axis")->check(CLI::PositiveNumber);
  render->add_option("--pixels", pixels, "Image width")->check(CLI::PositiveNumber);
  render->add_option("--color", colors, "Override a class color, CLASS=COLOR");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*verify) {
      if (g.samples < 100'000) throw CLI::ValidationError("--samples", "verify needs at least 1e5 samples");
      ar::VerifyOptions o;
      o.samples = g.samples;
      o.seed = g.seed;
      o.workers = g.workers;
      o.models = g.models;
      o.grid_resolution = resolution;
      o.restarts = restarts;
      const auto report = ar::run_verify(o);
      Output out(g.out);
      out.stream() << report.to_json().dump(2) << '\n';
      std::cerr << report.passed() << "/" << report.records.size() << " records pass\n";
      return report.all_pass() ? 0 : 1;
    }

    if (*derive) {
      std::vector<const ar::ModelSpec*> selected;
      if (g.models.empty()) {
        for (const auto& m : ar::model_catalog()) {
          if (m.parameter_count() <= 3) selected.push_back(&m);
        }
      } else {
        for (const auto& n : g.models) selected.push_back(&ar::find_model(n));
      }
      ordered_json rows = ordered_json::array();
      bool ok = true;
      for (const auto* m : selected) {
        ar::DeriveOptions d;
        d.restarts = restarts;
        d.seed = g.seed;
        const auto r = ar::derive_thresholds(*m, d);
        ok = ok && r.converged;
        rows.push_back(threshold_json(*m, r));
      }
      Output out(g.out);
      out.stream() << rows.dump(2) << '\n';
      return ok ? 0 : 1;
    }

    if (*prob) {
      const auto& m = single_model(g);
      const auto suite = ar::region_suite(m);
      std::vector<ar::RegionPredicate> chosen;
      if (regions.empty()) {
        chosen = suite.regions();
      } else {
        for (const auto& r : regions) chosen.push_back(suite.at(r));
      }
      std::vector<ar::ProbabilityEstimate> est;
      if (method == "grid") {
        est = ar::grid_probabilities(m, chosen, resolution);
      } else {
        ar::SamplingOptions s;
        s.samples = g.samples;
        s.seed = g.seed;
        s.workers = g.workers;
        s.domain = domain == "box" ? ar::Domain::bounding_box : ar::Domain::physical_set;
        est = ar::mc_probabilities(m, chosen, s);
      }
      Output out(g.out);
      if (g.format == "csv") {
        out.stream() << "model,region,value,std_error,samples,seed,method\n";
        for (std::size_t i = 0; i < est.size(); ++i) {
          out.stream() << m.name << ',' << chosen[i].name() << ',' << ar::format_coordinate(est[i].value)
                       << ',' << ar::format_coordinate(est[i].std_error) << ',' << est[i].samples << ','
                       << est[i].seed << ',' << ar::method_name(est[i].method) << '\n';
        }
      } else {
        ordered_json rows = ordered_json::array();
        for (std::size_t i = 0; i < est.size(); ++i) {
          rows.push_back({{"model", m.name},
                          {"region", chosen[i].name()},
                          {"value", est[i].value},
                          {"std_error", est[i].std_error},
                          {"samples", est[i].samples},
                          {"seed", est[i].seed},
                          {"method", ar::method_name(est[i].method)}});
        }
        out.stream() << rows.dump(2) << '\n';
      }
      return 0;
    }

    if (*cloud) {
      const auto& m = single_model(g);
      ar::CloudOptions c;
      c.points = points;
      c.seed = g.seed;
      c.max_proposals = max_proposals;
      if (g.format == "json") {
        c.format = ar::CloudFormat::json;
      } else if (!g.format.empty() && g.format != "csv") {
        throw CLI::ValidationError("--format", "export-cloud supports csv or json");
      }
      Output out(g.out);
      ar::export_cloud(m, region, c, out.stream());
      return 0;
    }

    if (*render) {
      const auto& m = single_model(g);
      ar::RenderStyle style;
      style.pixels = pixels;
      for (const auto& [k, v] : parse_colors(colors)) style.colors[k] = v;
      Output out(g.out);
      const auto counts = ar::render_2d(m, render_resolution, out.stream(), style);
      for (const auto& [k, v] : counts) std::cerr << k << ' ' << v << '\n';
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ar::UnknownName& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ar::ArityError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ar::UnsupportedModel& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kUsage;
}
