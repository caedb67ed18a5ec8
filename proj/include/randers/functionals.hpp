#pragma once

// Randers length and enclosed areas of closed curves by the periodic
// trapezoid rule. Error estimate: |Q_n - Q_{n/2}|.

#include <cmath>
#include <concepts>
#include <limits>
#include <string>
#include <vector>

#include "randers/curves.hpp"
#include "randers/errors.hpp"
#include "randers/metric.hpp"

namespace randers {

class QuadratureGrid {
 public:
  static constexpr int kDefaultNodes = 1024;

  explicit QuadratureGrid(int n = kDefaultNodes) : n_(n) {
    if (n < 256 || (n & (n - 1)) != 0)
      throw DomainError("quadrature node count must be a power of two >= 256");
    nodes_.resize(n);
    for (int i = 0; i < n; ++i) nodes_[i] = kTwoPi * i / n;
  }

  int n() const { return n_; }
  double weight() const { return kTwoPi / n_; }
  const std::vector<double>& nodes() const { return nodes_; }

 private:
  int n_;
  std::vector<double> nodes_;
};

struct FunctionalValue {
  double value = 0.0;
  double est_error = 0.0;
};

template <typename C>
concept ClosedCurve = requires(const C& c, double t) {
  { c.eval(t) } -> std::convertible_to<CurveSample<double>>;
};

/// Trapezoid rule for a 2 pi periodic integrand. Throws QuadratureError when the
/// node-doubling estimate exceeds `tolerance`.
template <typename F>
FunctionalValue periodic_trapezoid(F&& integrand, const QuadratureGrid& grid,
                                   double tolerance = std::numeric_limits<double>::infinity()) {
  double even = 0.0, odd = 0.0;
  const auto& t = grid.nodes();
  for (int i = 0; i < grid.n(); i += 2) even += integrand(t[i]);
  for (int i = 1; i < grid.n(); i += 2) odd += integrand(t[i]);
  const double full = (even + odd) * grid.weight();
  const double half = even * 2.0 * grid.weight();
  FunctionalValue out{full, std::abs(full - half)};
  if (out.est_error > tolerance)
    throw QuadratureError("quadrature error estimate " + std::to_string(out.est_error) +
                          " exceeds tolerance " + std::to_string(tolerance));
  return out;
}

/// Integral of F(gamma, gamma') over one period; beta is kept in the integrand.
template <ClosedCurve C>
FunctionalValue length(const C& curve, const RandersConfig& cfg, const QuadratureGrid& grid,
                       double tolerance = std::numeric_limits<double>::infinity()) {
  return periodic_trapezoid(
      [&](double t) {
        const CurveSample<double> s = curve.eval(t);
        return finsler_norm(s.point, s.velocity, cfg);
      },
      grid, tolerance);
}

/// Integrand of the enclosed sigma_alpha-area after Green's theorem.
inline double area_integrand(const DiscPoint<double>& p, const Tangent<double>& v) {
  return 2.0 * (p[0] * v[1] - p[1] * v[0]) / (1.0 - p.squaredNorm());
}

/// kappa(form, b) times 2 integral (x1 x2' - x2 x1') / (1 - r^2) dt.
template <ClosedCurve C>
FunctionalValue area(const C& curve, const RandersConfig& cfg, const QuadratureGrid& grid,
                     double tolerance = std::numeric_limits<double>::infinity()) {
  const double kappa = volume_factor(cfg);
  FunctionalValue v = periodic_trapezoid(
      [&](double t) {
        const CurveSample<double> s = curve.eval(t);
        require_in_disc(s.point);
        return area_integrand(s.point, s.velocity);
      },
      grid);
  v.value *= kappa;
  v.est_error *= kappa;
  if (v.est_error > tolerance)
    throw QuadratureError("area quadrature error estimate exceeds tolerance");
  return v;
}

struct CircleForms {
  double length;
  double area;
};

/// L = 4 pi a / (1 - a^2), A = kappa 4 pi a^2 / (1 - a^2).
CircleForms circle_closed_forms(double a, const RandersConfig& cfg);

}  // namespace randers
