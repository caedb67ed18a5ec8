#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "randers/isoperimetry.hpp"

using namespace randers;

TEST_CASE("perturbation generation") {
  const auto zero = generate_perturbations(PerturbationSpec{3, 4, 0.0, 5}, 0.5);
  for (const auto& c : zero) CHECK(c.is_circle());

  const auto a = generate_perturbations(PerturbationSpec{1, 4, 0.05, 30}, 0.5);
  const auto b = generate_perturbations(PerturbationSpec{1, 4, 0.05, 30}, 0.5);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].cos_coeffs() == b[i].cos_coeffs());
    CHECK(a[i].sin_coeffs() == b[i].sin_coeffs());
  }
  const auto c = generate_perturbations(PerturbationSpec{2, 4, 0.05, 30}, 0.5);
  CHECK(a[0].cos_coeffs() != c[0].cos_coeffs());

  const auto many = generate_perturbations(PerturbationSpec{42, 4, 0.05, 100}, 0.5);
  CHECK(many.size() == 100);
  for (const auto& p : many) {
    CHECK(check_admissible(p));
    for (int k = 0; k < 4; ++k) CHECK(std::abs(p.cos_coeffs()[k]) <= 0.05 / (k + 1));
  }

  CHECK_THROWS_AS(generate_perturbations(PerturbationSpec{1, 4, 5.0, 10}, 0.5), ExhaustionError);
  CHECK_THROWS_AS(generate_perturbations(PerturbationSpec{1, 0, 0.05, 10}, 0.5), DomainError);
  CHECK_THROWS_AS(generate_perturbations(PerturbationSpec{1, 4, 0.05, 0}, 0.5), DomainError);
}

TEST_CASE("length matching") {
  const QuadratureGrid grid;
  const RandersConfig cfg{0.3};
  const double target = length(Circle<double>(0.5), cfg, grid).value;
  const PolarFourierCurve<double> circle(0.5, {0.0}, {0.0});
  CHECK(std::abs(match_length(circle, target, cfg, grid).a0() - 0.5) <= 1e-12);

  const auto m = match_length(PolarFourierCurve<double>(0.5, {0.05}, {0.0}), target, cfg, grid);
  CHECK(m.a0() < 0.5);
  CHECK(std::abs(length(m, cfg, grid).value - target) <= 1e-10);

  CHECK_THROWS_AS(match_length(PolarFourierCurve<double>(0.5, {0.3}, {0.0}), 1e-3, cfg, grid),
                  BracketingError);
}

TEST_CASE("trials lose area") {
  const QuadratureGrid grid;
  const auto trials = run_trials(0.5, RandersConfig{0.3}, PerturbationSpec{42, 4, 0.05, 200}, grid);
  REQUIRE(trials.size() == 200);
  for (std::size_t i = 0; i < trials.size(); ++i) {
    CHECK(trials[i].index == static_cast<int>(i));
    CHECK(trials[i].ok());
    CHECK(std::abs(trials[i].length_err) <= 1e-10);
    CHECK(trials[i].deficit > 0.0);
  }

  const auto flat = run_trials(0.5, RandersConfig{0.3}, PerturbationSpec{42, 4, 0.0, 4}, grid);
  for (const auto& t : flat) {
    CHECK(t.ok());
    CHECK(std::abs(t.delta_area) <= 1e-12);
  }
}

TEST_CASE("area loss is second order in epsilon") {
  const QuadratureGrid grid;
  auto median = [&](double eps) {
    auto trials = run_trials(0.5, RandersConfig{0.3}, PerturbationSpec{42, 4, eps, 100}, grid);
    std::vector<double> v;
    for (const auto& t : trials) v.push_back(-t.delta_area);
    std::nth_element(v.begin(), v.begin() + 50, v.end());
    return v[50];
  };
  const double ratio = median(0.04) / median(0.02);
  CHECK(ratio >= 4.0 / 1.5);
  CHECK(ratio <= 4.0 * 1.5);
}

TEST_CASE("trials are deterministic and rotation invariant") {
  const QuadratureGrid grid;
  const RandersConfig cfg{0.7, VolumeForm::Minimum};
  const PerturbationSpec spec{9, 4, 0.05, 12};
  const auto a = run_trials(0.4, cfg, spec, grid);
  const auto b = run_trials(0.4, cfg, spec, grid);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].delta_area == b[i].delta_area);
    CHECK(a[i].a0_matched == b[i].a0_matched);
  }

  const double target = length(Circle<double>(0.4), cfg, grid).value;
  const double base = area(Circle<double>(0.4), cfg, grid).value;
  for (const auto& c : generate_perturbations(spec, 0.4)) {
    const double d0 = area(match_length(c, target, cfg, grid), cfg, grid).value - base;
    const double d1 = area(match_length(c.shifted(1.234), target, cfg, grid), cfg, grid).value - base;
    CHECK(d1 == doctest::Approx(d0).scale(1.0).epsilon(1e-10));
  }
}

TEST_CASE("isoperimetric deficit") {
  const QuadratureGrid grid;
  for (double a : {0.1, 0.5, 0.9})
    for (VolumeForm f : kAllVolumeForms)
      CHECK(std::abs(isoperimetric_deficit(Circle<double>(a), RandersConfig{0.6, f}, grid)) <= 1e-8);

  const PolarFourierCurve<double> c(0.5, {0.0, 0.05}, {0.0, 0.0});
  const double d = isoperimetric_deficit(c, RandersConfig{0.0, VolumeForm::HolmesThompson}, grid);
  CHECK(d > 0.0);
  for (double b : {0.3, 0.7})
    for (VolumeForm f : kAllVolumeForms)
      CHECK(isoperimetric_deficit(c, RandersConfig{b, f}, grid) == doctest::Approx(d).epsilon(1e-10));

  int n = 0;
  for (const auto& p : generate_perturbations(PerturbationSpec{77, 4, 0.06, 125}, 0.55))
    for (VolumeForm f : kAllVolumeForms) {
      CHECK(isoperimetric_deficit(p, RandersConfig{0.5, f}, grid) > 0.0);
      ++n;
    }
  CHECK(n == 500);
}
