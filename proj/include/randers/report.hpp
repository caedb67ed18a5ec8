#pragma once

// Report assembly shared by the CLI and the acceptance suite: metric checks,
// deficit sweeps, JSON/CSV serialisation and atomic file output.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "randers/curves.hpp"
#include "randers/isoperimetry.hpp"
#include "randers/metric.hpp"
#include "randers/variational.hpp"

namespace randers {

struct MetricCheck {
  double b = 0.0;
  int grid_points = 0;
  double norm_deviation = 0.0;     // max | |beta|_alpha - b |
  double norm_sq_deviation = 0.0;  // max | a^{ij} b_i b_j - b^2 |
  double gradient_mismatch = 0.0;  // max | grad f - b_i | (central differences)
  bool ys_checked = false;         // false in the Riemannian case b = 0
  double ys_residual_max = 0.0;    // max over the grid of max_ij |R_ij|
  double ys_residual_min = 0.0;    // min over the grid of max_ij |R_ij|
  double ys_floor = 0.0;
  bool pass = false;
};

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kGradientTolerance = 1e-7;

/// Lower bound of max_ij |R_ij| over the punctured disc: the radial entry of the
/// residual is -8 (1 - b^2) / (1 - r^2)^2, so some Cartesian entry is >= 4 (1 - b^2).
inline double yasuda_shimada_floor(double b) { return 4.0 * (1.0 - b * b); }

/// 200-point polar grid (20 radii in [0.05, 0.9] times 10 angles).
std::vector<DiscPoint<double>> metric_check_grid();

MetricCheck check_metric(double b);

struct DeficitRow {
  double a = 0.0;
  double length = 0.0;
  double area[4] = {0, 0, 0, 0};  // bh, ht, max, min
  double deficit = 0.0;
};

std::vector<DeficitRow> deficit_sweep(const std::vector<double>& a_values, double b,
                                      const QuadratureGrid& grid = QuadratureGrid());

nlohmann::json to_json(const RandersConfig& cfg);
nlohmann::json to_json(const PolarFourierCurve<double>& curve);
nlohmann::json to_json(const ConjugateScanReport& rep, bool with_series);
nlohmann::json to_json(const ExtremalityCertificate& cert);
nlohmann::json to_json(const MetricCheck& check);

std::string trials_csv(const std::vector<TrialResult>& trials);
std::string deficit_csv(const std::vector<DeficitRow>& rows);

/// Writes to a sibling temporary file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace randers
