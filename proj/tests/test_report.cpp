#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "randers/report.hpp"

using namespace randers;

TEST_CASE("metric check") {
  const MetricCheck m = check_metric(0.5);
  CHECK(m.grid_points == 200);
  CHECK(m.pass);
  CHECK(m.norm_deviation <= 1e-12);
  CHECK(m.gradient_mismatch <= 1e-7);
  CHECK(m.ys_checked);
  CHECK(m.ys_residual_max > 0.1);
  CHECK(m.ys_residual_min > yasuda_shimada_floor(0.5));

  const MetricCheck z = check_metric(0.0);
  CHECK(z.pass);
  CHECK_FALSE(z.ys_checked);
  CHECK(to_json(z)["yasuda_shimada"]["status"] == "skipped (Riemannian case)");
  CHECK(metric_check_grid().size() == 200);
}

TEST_CASE("deficit sweep") {
  std::vector<double> as;
  for (int i = 1; i <= 9; ++i) as.push_back(0.1 * i);
  const auto rows = deficit_sweep(as, 0.3);
  REQUIRE(rows.size() == 9);
  for (const auto& r : rows) {
    CHECK(std::abs(r.deficit) <= 1e-8);
    CHECK(r.length == doctest::Approx(4 * std::numbers::pi * r.a / (1 - r.a * r.a)).epsilon(1e-10));
    CHECK(r.area[0] / r.area[1] == doctest::Approx(std::pow(0.91, 1.5)).epsilon(1e-14));
  }
  std::istringstream csv(deficit_csv(rows));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "a,length,area_bh,area_ht,area_max,area_min,deficit");
  int lines = 0;
  while (std::getline(csv, line)) {
    CHECK(std::count(line.begin(), line.end(), ',') == 6);
    ++lines;
  }
  CHECK(lines == 9);
}

TEST_CASE("json and csv shapes") {
  const auto j = to_json(PolarFourierCurve<double>(0.5, {0.1}, {0.0}));
  CHECK(j["kind"] == "polar_fourier");
  CHECK(j["a0"] == 0.5);
  CHECK(j["cos_coeffs"].size() == 1);
  CHECK(to_json(PolarFourierCurve<double>(Circle<double>(0.3)))["kind"] == "circle");

  const auto cert = to_json(build_certificate(0.5, RandersConfig{0.0, VolumeForm::HolmesThompson}));
  for (const char* key : {"a", "b", "form", "lambda", "el_residual_max", "normality_min",
                          "weierstrass_max", "h1", "hess_form_max", "conjugate",
                          "second_variation_max", "pass"})
    CHECK(cert.contains(key));
  CHECK(cert["lambda"].get<double>() == doctest::Approx(-0.8));
  CHECK(cert["form"] == "ht");
  CHECK(cert["conjugate"].contains("zero_crossing"));
  CHECK(cert["conjugate"].contains("min_abs_D"));

  const auto trials = run_trials(0.5, RandersConfig{0.3}, PerturbationSpec{42, 4, 0.05, 3});
  const std::string csv = trials_csv(trials);
  CHECK(csv.rfind("index,a0_matched,length,area,delta_area,deficit\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}

TEST_CASE("atomic write") {
  const auto dir = std::filesystem::temp_directory_path() / "randers_report_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "out.json";
  write_atomic(path, "first\n");
  write_atomic(path, "second\n");
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == "second\n");
  CHECK_FALSE(std::filesystem::exists(dir / "out.json.tmp"));
  std::filesystem::remove_all(dir);
  CHECK_THROWS(write_atomic("/nonexistent-dir/x/out.json", "x"));
}
