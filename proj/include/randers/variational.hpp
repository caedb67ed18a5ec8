#pragma once

// Sufficiency conditions for origin-centred circles as maximisers of the
// enclosed area at fixed length:
//
//   h(x, x') = kappa * 2 (x1 x2' - x2 x1') / (1 - r^2) + lambda * 2 |x'| / (1 - r^2)
//
// The length integrand is alpha alone: beta = df contributes an exact
// differential to the length and drops out of every condition below.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "randers/curves.hpp"
#include "randers/functionals.hpp"
#include "randers/metric.hpp"

namespace randers {

struct LagrangeSystem {
  double lambda = 0.0;
  RandersConfig cfg;
};

/// Step sizes for the finite-difference fallbacks.
struct Numerics {
  double fd_step = 1e-5;           // first derivatives along t
  double hessian_rel_step = 1e-3;  // fourth-order Hessian stencils, relative to local scale
  double outer_t_step = 1e-2;      // d/dt of quantities that are themselves differenced
};

using Vec2 = Eigen::Vector2d;
using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;

// -- Lagrangian -------------------------------------------------------------

double length_integrand(const Vec2& x, const Vec2& v);
double lagrangian(const Vec2& x, const Vec2& v, const LagrangeSystem& sys);
/// dh/dx' in closed form.
Vec2 lagrangian_velocity_gradient(const Vec2& x, const Vec2& v, const LagrangeSystem& sys);

struct LengthGradient {
  Vec2 gx;  // dg/dx^i
  Vec2 gv;  // dg/dx'^i
};
LengthGradient length_integrand_gradient(const Vec2& x, const Vec2& v);

/// Hessians in z = (x1, x2, x1', x2') by fourth-order central differences.
Mat4 lagrangian_hessian(const Vec2& x, const Vec2& v, const LagrangeSystem& sys,
                        const Numerics& num = {});
Mat4 length_integrand_hessian(const Vec2& x, const Vec2& v, const Numerics& num = {});

// -- Multiplier and Euler-Lagrange ------------------------------------------

/// lambda = -2 a kappa / (1 + a^2).
double lambda_for_circle(double a, const RandersConfig& cfg);

/// dh/dr - d/dt dh/dr' for the polar form of h at parameter t.
double el_residual(const PolarFourierCurve<double>& curve, const LagrangeSystem& sys, double t,
                   const Numerics& num = {});
double el_residual(const Circle<double>& circle, const LagrangeSystem& sys, double t,
                   const Numerics& num = {});

/// Least-squares lambda for the (affine in lambda) residual along the circle.
double solve_lambda_numeric(double a, const RandersConfig& cfg, int samples = 64);

// -- Normality and Weierstrass ------------------------------------------------

/// (P1, P2) with P_i = g_{x^i} - d/dt g_{x'^i}.
Vec2 normality(const PolarFourierCurve<double>& curve, const RandersConfig& cfg, double t,
               const Numerics& num = {});
Vec2 normality(const Circle<double>& circle, const RandersConfig& cfg, double t,
               const Numerics& num = {});

/// E = h(x, u) - h(x, x') - (u - x') . h_{x'}(x, x').
double weierstrass_E(const Vec2& p, const Vec2& xdot, const Vec2& u, const LagrangeSystem& sys);
/// (2 lambda / ((1 - r^2) |x'|)) (|u| |x'| - <x', u>).
double weierstrass_closed_form(const Vec2& p, const Vec2& xdot, const Vec2& u,
                               const LagrangeSystem& sys);

// -- Velocity Hessian and Jacobi system ---------------------------------------

/// h1 from the trace identity h_{y1y1} + h_{y2y2} = |y|^2 h1.
double h1_along(const Circle<double>& circle, const LagrangeSystem& sys, double t,
                const Numerics& num = {});

/// sum h_{x'^i x'^j} y^i y^j along the circle at t.
double hessian_velocity_form(const Circle<double>& circle, const LagrangeSystem& sys, double t,
                             const Vec2& y, const Numerics& num = {});

struct JacobiCoefficients {
  double h1 = 0.0;
  double h2 = 0.0;
  double K = 0.0;
  double U = 0.0;
};

/// Chart coefficients of the Jacobi equation at t; requires x2'(t) away from zero.
JacobiCoefficients jacobi_coeffs(const Circle<double>& circle, const LagrangeSystem& sys,
                                 double t, const Numerics& num = {});

struct ConjugateScanReport {
  std::vector<double> c_values;  // interior scan points in (start, start + 2 pi)
  std::vector<double> D_values;
  bool zero_crossing = false;
  double min_abs_D = 0.0;
  double endpoint_D = 0.0;  // D(start, start + 2 pi)
  double max_halving_change = 0.0;
  JacobiCoefficients coefficients;
};

struct ConjugateScanOptions {
  int scan_points = 512;
  int steps = 4096;  // RK4 steps per period
  double zero_tol = 1e-6;
  double halving_tol = 1e-8;
  double start = 0.0;
  Numerics numerics;
};

/// Integrates theta_1, theta_2, theta_3 of h2 y - (h1 y')' + mu U = 0 with
/// constant coefficients and scans D(start, c) over one period.
ConjugateScanReport conjugate_scan(const Circle<double>& circle, const LagrangeSystem& sys,
                                   const ConjugateScanOptions& opts = {});

// -- Second variation -----------------------------------------------------------

/// y(t) = sin^2(t/2) p(t), each component of p a trigonometric polynomial.
/// Coefficients per component: [a0, a1, b1, ..., aH, bH].
class TrigVariation {
 public:
  TrigVariation(int harmonics, Eigen::VectorXd coeffs, bool windowed = true);

  static int dimension(int harmonics) { return 2 * (2 * harmonics + 1); }

  int harmonics() const { return harmonics_; }
  bool windowed() const { return windowed_; }
  const Eigen::VectorXd& coeffs() const { return coeffs_; }

  /// (y, y')
  std::pair<Vec2, Vec2> eval(double t) const;

 private:
  int harmonics_;
  Eigen::VectorXd coeffs_;
  bool windowed_;
};

/// Precomputes the Hessian of h on the quadrature nodes of one circle.
class SecondVariation {
 public:
  SecondVariation(const Circle<double>& circle, const LagrangeSystem& sys,
                  const QuadratureGrid& grid = QuadratureGrid(256), const Numerics& num = {});

  /// J''(gamma0, y) = integral of 2 omega(t, y, y').
  double operator()(const TrigVariation& y) const;
  /// integral of g_x . y + g_x' . y'
  double constraint(const TrigVariation& y) const;
  /// Orthogonal projection of the coefficients onto the constraint's kernel.
  TrigVariation project(const TrigVariation& y) const;
  /// True if the normal component of y vanishes (y = rho gamma0').
  bool is_tangential(const TrigVariation& y, double rel_tol = 1e-8) const;

 private:
  Circle<double> circle_;
  QuadratureGrid grid_;
  std::vector<Mat4> hessians_;
  std::vector<LengthGradient> gradients_;
  std::vector<Vec2> velocities_;
};

double second_variation(const Circle<double>& circle, const LagrangeSystem& sys,
                        const TrigVariation& y);

/// Random constrained, non-tangential probes; deterministic per (seed, index).
std::vector<TrigVariation> random_probes(const SecondVariation& form, int count,
                                         std::uint64_t seed, int harmonics = 6);

// -- Certificate ------------------------------------------------------------------

struct CertificateOptions {
  double tol = 1e-6;
  std::optional<double> lambda_override;
  int probes = 50;
  int probe_harmonics = 6;
  std::uint64_t seed = 42;
  ConjugateScanOptions scan;
};

struct ExtremalityCertificate {
  double a = 0.0;
  RandersConfig cfg;
  double lambda = 0.0;
  double el_residual_max = 0.0;
  double normality_min = 0.0;
  double weierstrass_max = 0.0;
  double h1 = 0.0;
  double hess_form_max = 0.0;
  ConjugateScanReport conjugate;
  double second_variation_max = 0.0;
  bool pass = false;
  std::vector<std::string> reasons;  // one entry per failed condition
};

ExtremalityCertificate build_certificate(double a, const RandersConfig& cfg,
                                         const CertificateOptions& opts = {});

}  // namespace randers
