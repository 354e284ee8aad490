#include <doctest.h>

#include <random>

#include "archipelago/errors.hpp"
#include "archipelago/models.hpp"
#include "random_matrices.hpp"

using namespace archipelago;

TEST_CASE("catalog has eleven validated models") {
  const auto& c = model_catalog();
  CHECK(c.size() == 11);
  for (const auto& m : c) {
    const auto n = m.parameter_count();
    CHECK((n == 2 || n == 3 || n == 7));
    CHECK(m.box_half_width.size() == n);
  }
  CHECK(find_model("qutrit_ququart_ppt").terms[2].b == 13);
  CHECK_THROWS_AS(find_model("no_such_model"), UnknownName);
}

TEST_CASE("validate_model rejects out-of-range labels") {
  ModelSpec m{"bad", 2, 2, {{1, 4}}, {1.0}};
  CHECK_THROWS_AS(validate_model(m), DomainError);
  ModelSpec shape{"shape", 2, 2, {{1, 1}}, {1.0, 1.0}};
  CHECK_THROWS_AS(validate_model(shape), ShapeError);
}

TEST_CASE("ParameterPoint requires finite coordinates") {
  CHECK_THROWS_AS(ParameterPoint({0.1, std::nan("")}), DomainError);
  CHECK_THROWS_AS(ParameterPoint({INFINITY}), DomainError);
  CHECK(ParameterPoint({0.1, 0.2}).size() == 2);
}

TEST_CASE("build_state: maximally mixed at zero, unit trace, Hermitian") {
  const auto& qq = find_model("qubit_ququart");
  CHECK(build_state(qq, ParameterPoint{0, 0, 0}).matrix().isApprox(Eigen::MatrixXcd::Identity(8, 8) / 8.0));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (const auto& m : model_catalog()) {
    std::vector<double> t(m.parameter_count());
    for (auto& v : t) v = u(rng);
    const auto rho = build_state(m, t);
    CHECK(rho.dim() == m.dim());
    CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
    CHECK((rho.matrix() - rho.matrix().adjoint()).cwiseAbs().maxCoeff() < 1e-14);
  }
  CHECK_THROWS_AS(build_state(qq, ParameterPoint{0.1, 0.2}), ArityError);
}

TEST_CASE("qubit_ququart point on the boundary of the closed form is PSD") {
  const auto& qq = find_model("qubit_ququart");
  const auto rho = build_state(qq, ParameterPoint{0.25, 0.25, 0.0});
  CHECK(min_eigenvalue(rho) >= -1e-12);
  CHECK_FALSE(is_physical(qq, ParameterPoint{0.3, 0.4, 0.3}));
}

TEST_CASE("leading minors are diagnostics only") {
  const HermitianMatrix id = HermitianMatrix::identity(3);
  CHECK(leading_principal_minors(id) == Eigen::Vector3d(1, 1, 1));
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
  d(1, 1) = -1.0;
  const HermitianMatrix m(d);
  const auto lm = leading_principal_minors(m);
  CHECK(lm(0) == 0.0);
  CHECK(lm(1) == 0.0);
  CHECK_FALSE(is_psd(m));
  CHECK_FALSE(all_principal_minors_nonnegative(m));
}

TEST_CASE("is_psd basics") {
  CHECK(is_psd((1.0 / 8) * HermitianMatrix::identity(8)));
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
  d(1, 1) = -1.0;
  CHECK_FALSE(is_psd(HermitianMatrix(d)));
}

TEST_CASE("eigenvalue PSD test agrees with all principal minors on random 4x4") {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> shift(0.0, 1.5);
  int agree = 0, considered = 0, psd = 0;
  for (int rep = 0; rep < 10000; ++rep) {
    Eigen::MatrixXcd h = testing_util::random_hermitian(rng, 4);
    h += shift(rng) * Eigen::MatrixXcd::Identity(4, 4);
    const HermitianMatrix m(h);
    const double lmin = min_eigenvalue(m);
    if (std::abs(lmin) < 1e-8) continue;
    ++considered;
    const bool a = is_psd(m);
    psd += a;
    const bool b = all_principal_minors_nonnegative(m);
    agree += a == b;
    if (a && lmin > 0) {
      // Sylvester: positive definite iff every leading minor is positive.
      CHECK((leading_principal_minors(m).array() > 0).all());
    }
  }
  CHECK(agree == considered);
  CHECK(considered > 9900);
  CHECK(psd > 300);
  CHECK(psd < considered - 1000);
}

TEST_CASE("partial transpose") {
  const HermitianMatrix mixed = (1.0 / 8) * HermitianMatrix::identity(8);
  CHECK(partial_transpose(mixed, 2, 4).matrix() == mixed.matrix());
  CHECK_THROWS_AS(partial_transpose(mixed, 3, 3), ShapeError);

  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 50; ++rep) {
    const HermitianMatrix h(testing_util::random_hermitian(rng, 12));
    const auto pt = partial_transpose(h, 3, 4);
    CHECK((partial_transpose(pt, 3, 4).matrix() - h.matrix()).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(std::abs(pt.trace() - h.trace()) < 1e-12);
    CHECK((pt.matrix() - pt.matrix().adjoint()).cwiseAbs().maxCoeff() < 1e-14);
    // Transposing A instead of B is the full transpose of the B-transpose.
    const HermitianMatrix pt_a(pt.matrix().transpose().eval());
    CHECK((pt.eigenvalues() - pt_a.eigenvalues()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("two_qubit: equal-coefficient points") {
  const auto& m = find_model("two_qubit");
  // With all three sigma_i (x) sigma_i terms positive, (0.6,0.6,0.6) has the
  // eigenvalue (1 - 1.8)/4 and is not a state; its mirror image is a
  // physical NPT state.
  const ParameterPoint pos{0.6, 0.6, 0.6};
  CHECK(min_eigenvalue(build_state(m, pos)) == doctest::Approx(-0.2));
  CHECK_FALSE(is_physical(m, pos));
  const ParameterPoint neg{-0.6, -0.6, -0.6};
  CHECK(is_physical(m, neg));
  const auto pt = partial_transpose(build_state(m, neg), 2, 2);
  CHECK(min_eigenvalue(pt) == doctest::Approx(-0.2));
  CHECK_FALSE(is_ppt(m, neg));
}

TEST_CASE("spec examples for is_physical and is_ppt") {
  for (const auto& m : model_catalog()) {
    const std::vector<double> zero(m.parameter_count(), 0.0);
    CHECK(is_physical(m, zero));
    CHECK(is_ppt(m, zero));
  }
  const auto& tq = find_model("two_ququart");
  // The printed generators give the prism |t1|+|t3| <= 1/4, |t2| <= 1/4;
  // this corner of the quoted cube is outside it.
  CHECK_FALSE(is_physical(tq, ParameterPoint{0.24, 0.24, 0.24}));
  CHECK(is_physical(tq, ParameterPoint{0.12, 0.24, 0.12}));
}

TEST_CASE("closed-form physical sets agree with the eigenvalue oracle") {
  std::mt19937_64 rng(99);
  for (const char* name : {"qubit_ququart", "two_param_qutrit", "two_param_ququart", "two_ququart"}) {
    CAPTURE(name);
    const auto& m = find_model(name);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int disagreements = 0, checked = 0;
    std::vector<double> t(m.parameter_count());
    for (int rep = 0; rep < 100000; ++rep) {
      for (std::size_t i = 0; i < t.size(); ++i) t[i] = 1.2 * m.box_half_width[i] * u(rng);
      const double lmin = min_eigenvalue(build_state(m, t));
      if (std::abs(lmin) < 1e-8) continue;
      ++checked;
      disagreements += *closed_form_physical(m, t) != (lmin >= -1e-10);
    }
    CHECK(checked > 99000);
    if (std::string(name) == "two_ququart") {
      // The quoted cube is not the physical set of the printed model.
      CHECK(disagreements > 0);
    } else {
      CHECK(disagreements == 0);
    }
  }
  CHECK_FALSE(closed_form_physical(find_model("qutrit_rho1"), ParameterPoint{0, 0, 0}).has_value());
}

TEST_CASE("fast evaluator matches the eigenvalue predicate") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const auto& m : model_catalog()) {
    CAPTURE(m.name);
    ModelEvaluator ev(m);
    std::vector<double> t(m.parameter_count());
    int mismatches = 0;
    for (int rep = 0; rep < 2000; ++rep) {
      for (std::size_t i = 0; i < t.size(); ++i) t[i] = 1.1 * m.box_half_width[i] * u(rng);
      const auto rho = build_state(m, t);
      const double lp = min_eigenvalue(rho);
      const double lt = min_eigenvalue(partial_transpose(rho, m.dim_a, m.dim_b));
      if (std::abs(lp + 1e-10) > 1e-9) mismatches += ev.physical(t) != (lp >= -1e-10);
      if (std::abs(lt + 1e-10) > 1e-9) mismatches += ev.ppt(t) != (lt >= -1e-10);
    }
    CHECK(mismatches == 0);
  }
}

TEST_CASE("bounding boxes contain the physical sets") {
  // Bisect along random rays for the boundary of the physical set; every
  // boundary point must lie in the box (up to bisection slack).
  std::mt19937_64 rng(21);
  std::normal_distribution<double> g(0.0, 1.0);
  for (const auto& m : model_catalog()) {
    CAPTURE(m.name);
    ModelEvaluator ev(m);
    const std::size_t n = m.parameter_count();
    std::vector<double> dir(n), t(n);
    double worst = 0.0;
    for (int rep = 0; rep < 3000; ++rep) {
      double norm = 0.0;
      for (auto& v : dir) {
        v = g(rng);
        norm += v * v;
      }
      norm = std::sqrt(norm);
      double lo = 0.0, hi = 4.0;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        for (std::size_t i = 0; i < n; ++i) t[i] = mid * dir[i] / norm;
        (ev.physical(t) ? lo : hi) = mid;
      }
      for (std::size_t i = 0; i < n; ++i) {
        worst = std::max(worst, std::abs(lo * dir[i] / norm) / m.box_half_width[i]);
      }
    }
    // The 1e-10 PSD tolerance widens each set by a few 1e-10.
    CHECK(worst <= 1.0 + 1e-8);
    CHECK(worst > 0.9);
  }
}
