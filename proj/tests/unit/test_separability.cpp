#include <doctest.h>

#include <cmath>
#include <numeric>

#include "archipelago/errors.hpp"
#include "archipelago/separability.hpp"

using namespace archipelago;

namespace {

double abs_product(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 1.0, [](double a, double x) { return a * std::abs(x); });
}

bool psd(const HermitianMatrix& m) { return is_psd(m); }

}  // namespace

TEST_CASE("component_state convention") {
  const ComponentSpec qubit{2, {1, 2, 3}};
  const std::vector<double> zero{0, 0, 0};
  const auto mixed = component_state(qubit, zero);
  CHECK(mixed.matrix().isApprox(Eigen::MatrixXcd::Identity(2, 2) / 2.0));
  CHECK(std::abs(component_state(qubit, std::vector<double>{0.3, -0.2, 0.5}).trace() - 1.0) < 1e-14);
  CHECK_THROWS_AS(component_state(qubit, std::vector<double>{0.1}), ArityError);
}

TEST_CASE("qubit component is the Bloch ball") {
  const ComponentSpec qubit{2, {1, 2, 3}};
  const double s = 1.0 / std::sqrt(3.0);
  CHECK(psd(component_state(qubit, std::vector<double>{s, s, s})));
  CHECK(psd(component_state(qubit, std::vector<double>{0.6, 0.0, 0.79})));
  CHECK_FALSE(psd(component_state(qubit, std::vector<double>{0.6, 0.0, 0.81})));
  CHECK_FALSE(psd(component_state(qubit, std::vector<double>{s * 1.001, s, s})));
}

TEST_CASE("ququart component on (1,13,3)") {
  const ComponentSpec c = component_b(find_model("qubit_ququart"));
  REQUIRE(c.dim == 4);
  REQUIRE(c.indices == std::vector<int>{1, 13, 3});
  const double r = 0.5 / std::sqrt(2.0);
  CHECK(psd(component_state(c, std::vector<double>{r, 0.5, r})));
  CHECK(psd(component_state(c, std::vector<double>{0.3, -0.49, -0.4})));
  CHECK_FALSE(psd(component_state(c, std::vector<double>{0.3, 0.2, 0.41})));
  CHECK_FALSE(psd(component_state(c, std::vector<double>{0.0, 0.51, 0.0})));
}

TEST_CASE("max_feasible_scale sits on the feasibility boundary") {
  const auto& m = find_model("qutrit_addendum");
  const auto a = component_a(m);
  const auto& q = mixer_for_arity(3);
  const std::vector<double> dir{0.3, -0.8, 0.52};
  const double r = max_feasible_scale(a, dir, q);
  REQUIRE(r > 0);
  std::vector<double> in(3), out(3);
  for (int i = 0; i < 3; ++i) {
    in[i] = dir[i] * r * (1 - 1e-6);
    out[i] = dir[i] * r * (1 + 1e-6);
  }
  CHECK(component_feasible(a, in, q));
  CHECK_FALSE(component_feasible(a, out, q));
  CHECK(mixed_components(a, in, q).size() == 4);
}

TEST_CASE("functionals and entanglement predicates") {
  const std::vector<double> t{0.25, -0.25, 0.24};
  CHECK(additive_functional(t) == doctest::Approx(0.5476));
  CHECK(multiplicative_functional(t) == doctest::Approx(0.015 * 0.015));
  const auto& qq = find_model("qubit_ququart");
  const auto th = *published_thresholds("qubit_ququart");
  CHECK(entangled_additive(qq, th, t));
  CHECK(entangled_any(qq, th, t));
  const std::vector<double> zero{0, 0, 0};
  CHECK_FALSE(entangled_additive(qq, th, zero));
  CHECK_FALSE(entangled_multiplicative(qq, th, zero));
  CHECK_FALSE(entangled_any(qq, th, zero));
  CHECK_THROWS_AS(entangled_any(qq, th, std::vector<double>{0.1, 0.1}), ArityError);
}

TEST_CASE("closed-form matching") {
  const auto quarter = match_closed_form(0.25 * (1 + 3e-7));
  REQUIRE(quarter);
  CHECK(quarter->first == 0.25);
  CHECK(quarter->second == "1/4");
  const auto surd = match_closed_form(5.4750035e-6);
  REQUIRE(surd);
  CHECK(surd->second == "(411+41*sqrt(41))/123018750");
  const auto r = match_closed_form(1.0 / 314928);
  REQUIRE(r);
  CHECK(r->first == doctest::Approx(1.0 / 314928).epsilon(1e-15));
  CHECK_FALSE(match_closed_form(std::acos(-1.0) / 10).has_value());
}

TEST_CASE("qubit_ququart thresholds and the refutation of the original bounds") {
  const auto d = derive_thresholds(find_model("qubit_ququart"));
  CHECK(d.converged);
  CHECK(d.thresholds.additive == doctest::Approx(0.5).epsilon(1e-5));
  CHECK(d.thresholds.multiplicative == doctest::Approx(1.0 / 6912).epsilon(1e-5));
  CHECK(d.thresholds.additive_form == "1/2");
  CHECK(d.thresholds.multiplicative_form == "1/6912");
  CHECK(d.thresholds.additive < 1.0);
  CHECK(d.thresholds.multiplicative < 4.0 / 19683);
  CHECK(d.additive_hits >= 2);
}

TEST_CASE("derivation is deterministic for a seed") {
  DeriveOptions o;
  o.seed = 42;
  const auto& m = find_model("two_param_qutrit");
  const auto a = derive_thresholds(m, o);
  const auto b = derive_thresholds(m, o);
  CHECK(a.additive_numeric == b.additive_numeric);
  CHECK(a.multiplicative_numeric == b.multiplicative_numeric);
  CHECK(a.thresholds.additive == doctest::Approx(16.0 / 81).epsilon(1e-5));
  CHECK(a.thresholds.multiplicative == doctest::Approx(16.0 / 6561).epsilon(1e-5));
}

TEST_CASE("sign flips of a coefficient leave the thresholds unchanged") {
  const auto& m = find_model("qutrit_addendum");
  const auto base = derive_thresholds(m);
  for (int row = 0; row < 3; ++row) {
    CAPTURE(row);
    OrthogonalMixer flipped = mixer_for_arity(3);
    flipped.entries.row(row) *= -1.0;
    REQUIRE(validate_mixer(flipped, true));
    DeriveOptions o;
    o.mixer = &flipped;
    o.seed = 7 + static_cast<std::uint64_t>(row);
    const auto d = derive_thresholds(m, o);
    CHECK(d.additive_numeric == doctest::Approx(base.additive_numeric).epsilon(1e-6));
    CHECK(d.multiplicative_numeric == doctest::Approx(base.multiplicative_numeric).epsilon(1e-6));
  }
}

TEST_CASE("enlarging the feasible sets never lowers a threshold") {
  const auto& m = find_model("two_qubit");
  const auto base = derive_thresholds(m);
  for (double s : {1.05, 1.2}) {
    DeriveOptions o;
    o.feasibility_scale = s;
    const auto d = derive_thresholds(m, o);
    CHECK(d.additive_numeric >= base.additive_numeric * (1 - 1e-9));
    CHECK(d.multiplicative_numeric >= base.multiplicative_numeric * (1 - 1e-9));
  }
}

TEST_CASE("symmetric models have balanced multiplicative optima") {
  for (const char* name : {"two_qubit", "qutrit_rho1", "qutrit_addendum", "two_param_qutrit"}) {
    CAPTURE(name);
    const auto d = derive_thresholds(find_model(name));
    const double pa = abs_product(d.multiplicative_alpha);
    const double pb = abs_product(d.multiplicative_beta);
    CHECK(std::abs(pa - pb) <= 1e-6 * std::max(pa, pb) + 1e-12);
  }
}

TEST_CASE("unsupported arities and missing thresholds") {
  const auto& h7 = find_model("hadamard_qutrit7");
  CHECK_THROWS_AS(derive_thresholds(h7), UnsupportedModel);
  CHECK_THROWS_AS(reference_thresholds(h7), UnsupportedModel);
  CHECK_FALSE(published_thresholds("hadamard_qutrit7").has_value());
}
