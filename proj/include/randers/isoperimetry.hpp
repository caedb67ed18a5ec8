#pragma once

// Length-matched perturbations of origin-centred circles and the hyperbolic
// isoperimetric deficit L^2 - 4 pi A - A^2.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "randers/curves.hpp"
#include "randers/functionals.hpp"
#include "randers/metric.hpp"

namespace randers {

struct PerturbationSpec {
  std::uint64_t seed = 42;
  int K = 4;              // highest harmonic
  double epsilon = 0.05;  // coefficient of harmonic k drawn from [-eps, eps] / k
  int count = 200;
};

void validate(const PerturbationSpec& spec);

/// count admissible curves around the circle of radius a; inadmissible draws are redrawn.
std::vector<PolarFourierCurve<double>> generate_perturbations(const PerturbationSpec& spec,
                                                              double a);

/// Replaces a0 so that the Randers length equals target_length (bisection).
PolarFourierCurve<double> match_length(const PolarFourierCurve<double>& curve,
                                       double target_length, const RandersConfig& cfg,
                                       const QuadratureGrid& grid = QuadratureGrid());

inline constexpr double kStrictMaximumMargin = 1e-12;

struct TrialResult {
  int index = 0;
  PolarFourierCurve<double> curve;  // length-matched
  double a0_matched = 0.0;
  double length = 0.0;
  double length_err = 0.0;
  double area = 0.0;
  double delta_area = 0.0;  // A(gamma) - A(circle)
  double deficit = 0.0;
  std::optional<std::string> error;

  /// delta_area < -1e-12, or the unperturbed circle within that margin.
  bool ok() const;
};

std::vector<TrialResult> run_trials(double a, const RandersConfig& cfg,
                                    const PerturbationSpec& spec,
                                    const QuadratureGrid& grid = QuadratureGrid());

/// L^2 - 4 pi A' - A'^2 with A' = area / kappa (the alpha-area).
template <ClosedCurve C>
double isoperimetric_deficit(const C& curve, const RandersConfig& cfg,
                             const QuadratureGrid& grid = QuadratureGrid()) {
  const double L = length(curve, cfg, grid).value;
  const double A = area(curve, cfg, grid).value / volume_factor(cfg);
  return L * L - 4.0 * std::numbers::pi * A - A * A;
}

}  // namespace randers
