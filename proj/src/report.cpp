#include "randers/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace randers {

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::vector<DiscPoint<double>> metric_check_grid() {
  std::vector<DiscPoint<double>> pts;
  for (int i = 0; i < 20; ++i) {
    const double r = 0.05 + (0.9 - 0.05) * i / 19.0;
    for (int j = 0; j < 10; ++j) {
      const double th = 2.0 * std::numbers::pi * (j + 0.5) / 10.0;
      pts.emplace_back(r * std::cos(th), r * std::sin(th));
    }
  }
  return pts;
}

MetricCheck check_metric(double b) {
  const RandersConfig cfg{b, VolumeForm::BusemannHausdorff};
  validate(cfg);
  MetricCheck out;
  out.b = b;
  const auto grid = metric_check_grid();
  out.grid_points = static_cast<int>(grid.size());
  out.ys_checked = b > 0.0;
  out.ys_floor = yasuda_shimada_floor(b);
  out.ys_residual_min = std::numeric_limits<double>::infinity();
  constexpr double step = 1e-5;
  for (const auto& p : grid) {
    const double n2 = beta_norm_squared(p, cfg);
    out.norm_sq_deviation = std::max(out.norm_sq_deviation, std::abs(n2 - b * b));
    out.norm_deviation = std::max(out.norm_deviation, std::abs(std::sqrt(n2) - b));
    const Tangent<double> bi = beta_covector(p, cfg);
    for (int j = 0; j < 2; ++j) {
      DiscPoint<double> e = DiscPoint<double>::Zero();
      e[j] = step;
      const double d = (potential_f(DiscPoint<double>(p + e), cfg) -
                        potential_f(DiscPoint<double>(p - e), cfg)) /
                       (2.0 * step);
      out.gradient_mismatch = std::max(out.gradient_mismatch, std::abs(d - bi[j]));
    }
    if (out.ys_checked) {
      const double m = yasuda_shimada_residual(p, cfg).cwiseAbs().maxCoeff();
      out.ys_residual_max = std::max(out.ys_residual_max, m);
      out.ys_residual_min = std::min(out.ys_residual_min, m);
    }
  }
  if (!out.ys_checked) out.ys_residual_min = 0.0;
  out.pass = out.norm_sq_deviation <= kNormTolerance && out.norm_deviation <= kNormTolerance &&
             out.gradient_mismatch <= kGradientTolerance &&
             (!out.ys_checked || out.ys_residual_min > out.ys_floor);
  return out;
}

std::vector<DeficitRow> deficit_sweep(const std::vector<double>& a_values, double b,
                                      const QuadratureGrid& grid) {
  std::vector<DeficitRow> rows;
  for (double a : a_values) {
    const Circle<double> circle(a);
    DeficitRow row;
    row.a = a;
    row.length = length(circle, {b, VolumeForm::HolmesThompson}, grid).value;
    for (int f = 0; f < 4; ++f)
      row.area[f] = area(circle, {b, kAllVolumeForms[f]}, grid).value;
    row.deficit = isoperimetric_deficit(circle, {b, VolumeForm::HolmesThompson}, grid);
    rows.push_back(row);
  }
  return rows;
}

nlohmann::json to_json(const RandersConfig& cfg) {
  return {{"b", cfg.b}, {"form", std::string(to_string(cfg.form))}};
}

nlohmann::json to_json(const PolarFourierCurve<double>& curve) {
  return {{"kind", curve.is_circle() ? "circle" : "polar_fourier"},
          {"a0", curve.a0()},
          {"cos_coeffs", curve.cos_coeffs()},
          {"sin_coeffs", curve.sin_coeffs()}};
}

nlohmann::json to_json(const ConjugateScanReport& rep, bool with_series) {
  nlohmann::json j = {{"zero_crossing", rep.zero_crossing},
                      {"min_abs_D", rep.min_abs_D},
                      {"endpoint_D", rep.endpoint_D},
                      {"max_halving_change", rep.max_halving_change},
                      {"coefficients",
                       {{"h1", rep.coefficients.h1},
                        {"h2", rep.coefficients.h2},
                        {"K", rep.coefficients.K},
                        {"U", rep.coefficients.U}}}};
  if (with_series) {
    j["c_values"] = rep.c_values;
    j["D_values"] = rep.D_values;
  }
  return j;
}

nlohmann::json to_json(const ExtremalityCertificate& cert) {
  return {{"a", cert.a},
          {"b", cert.cfg.b},
          {"form", std::string(to_string(cert.cfg.form))},
          {"lambda", cert.lambda},
          {"el_residual_max", cert.el_residual_max},
          {"normality_min", cert.normality_min},
          {"weierstrass_max", cert.weierstrass_max},
          {"h1", cert.h1},
          {"hess_form_max", cert.hess_form_max},
          {"conjugate", to_json(cert.conjugate, false)},
          {"second_variation_max", cert.second_variation_max},
          {"second_variation_basis", "finite trigonometric probe basis (sampled, not exhaustive)"},
          {"pass", cert.pass},
          {"reasons", cert.reasons}};
}

nlohmann::json to_json(const MetricCheck& c) {
  nlohmann::json ys;
  if (c.ys_checked) {
    ys = {{"status", "checked"},
          {"lambda", kYasudaShimadaLambda},
          {"residual_max", c.ys_residual_max},
          {"residual_min", c.ys_residual_min},
          {"floor", c.ys_floor}};
  } else {
    ys = {{"status", "skipped (Riemannian case)"}};
  }
  return {{"b", c.b},
          {"grid_points", c.grid_points},
          {"norm_deviation", c.norm_deviation},
          {"norm_sq_deviation", c.norm_sq_deviation},
          {"gradient_mismatch", c.gradient_mismatch},
          {"yasuda_shimada", ys},
          {"pass", c.pass}};
}

std::string trials_csv(const std::vector<TrialResult>& trials) {
  std::string out = "index,a0_matched,length,area,delta_area,deficit\n";
  for (const auto& t : trials) {
    out += std::to_string(t.index) + ',' + num(t.a0_matched) + ',' + num(t.length) + ',' +
           num(t.area) + ',' + num(t.delta_area) + ',' + num(t.deficit) + '\n';
  }
  return out;
}

std::string deficit_csv(const std::vector<DeficitRow>& rows) {
  std::string out = "a,length,area_bh,area_ht,area_max,area_min,deficit\n";
  for (const auto& r : rows) {
    out += num(r.a) + ',' + num(r.length);
    for (double A : r.area) out += ',' + num(A);
    out += ',' + num(r.deficit) + '\n';
  }
  return out;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    os << content;
    if (!os.flush()) throw std::runtime_error("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace randers
