#include "randers/variational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>

#include "randers/finite_diff.hpp"
#include "randers/ode.hpp"

namespace randers {

namespace {

constexpr double kPi = std::numbers::pi;

double kappa_of(const LagrangeSystem& sys) { return volume_factor(sys.cfg); }

Vec4 stack(const Vec2& x, const Vec2& v) { return {x[0], x[1], v[0], v[1]}; }

Vec4 hessian_steps(const Vec2& x, const Vec2& v, const Numerics& num) {
  const double hx = num.hessian_rel_step * (1.0 - x.norm());
  const double hv = num.hessian_rel_step * v.norm();
  return {hx, hx, hv, hv};
}

}  // namespace

double length_integrand(const Vec2& x, const Vec2& v) {
  return 2.0 * v.norm() / (1.0 - x.squaredNorm());
}

double lagrangian(const Vec2& x, const Vec2& v, const LagrangeSystem& sys) {
  return kappa_of(sys) * area_integrand(x, v) + sys.lambda * length_integrand(x, v);
}

Vec2 lagrangian_velocity_gradient(const Vec2& x, const Vec2& v, const LagrangeSystem& sys) {
  const double q = 1.0 - x.squaredNorm();
  const double kappa = kappa_of(sys);
  const double speed = v.norm();
  return Vec2(-2.0 * kappa * x[1] / q, 2.0 * kappa * x[0] / q) +
         (2.0 * sys.lambda / (q * speed)) * v;
}

LengthGradient length_integrand_gradient(const Vec2& x, const Vec2& v) {
  const double q = 1.0 - x.squaredNorm();
  const double speed = v.norm();
  return {(4.0 * speed / (q * q)) * x, (2.0 / (q * speed)) * v};
}

Mat4 lagrangian_hessian(const Vec2& x, const Vec2& v, const LagrangeSystem& sys,
                        const Numerics& num) {
  auto h = [&](const Vec4& z) {
    return lagrangian(z.head<2>(), z.tail<2>(), sys);
  };
  return fd::hessian4(h, stack(x, v), hessian_steps(x, v, num));
}

Mat4 length_integrand_hessian(const Vec2& x, const Vec2& v, const Numerics& num) {
  auto g = [](const Vec4& z) { return length_integrand(z.head<2>(), z.tail<2>()); };
  return fd::hessian4(g, stack(x, v), hessian_steps(x, v, num));
}

double lambda_for_circle(double a, const RandersConfig& cfg) {
  if (!(a > 0.0 && a < 1.0)) throw DomainError("circle radius must satisfy 0 < a < 1");
  return -2.0 * a * volume_factor(cfg) / (1.0 + a * a);
}

double el_residual(const PolarFourierCurve<double>& curve, const LagrangeSystem& sys, double t,
                   const Numerics& num) {
  const double kappa = kappa_of(sys);
  auto dh_drdot = [&](double s) {
    const double r = curve.radius(s), rd = curve.radius_dot(s);
    const double speed = std::hypot(r, rd);
    if (!(r > 0.0 && r < 1.0) || speed == 0.0)
      throw AdmissibilityError("curve is not admissible at t = " + std::to_string(s));
    return 2.0 * sys.lambda * rd / (speed * (1.0 - r * r));
  };
  const double r = curve.radius(t), rd = curve.radius_dot(t);
  const double speed = std::hypot(r, rd);
  if (!(r > 0.0 && r < 1.0) || speed == 0.0)
    throw AdmissibilityError("curve is not admissible at t = " + std::to_string(t));
  const double q = 1.0 - r * r;
  const double dh_dr = 4.0 * kappa * r / (q * q) +
                       2.0 * sys.lambda * (r / (speed * q) + 2.0 * r * speed / (q * q));
  return dh_dr - fd::central(dh_drdot, t, num.fd_step);
}

double el_residual(const Circle<double>& circle, const LagrangeSystem& sys, double t,
                   const Numerics& num) {
  return el_residual(PolarFourierCurve<double>(circle), sys, t, num);
}

double solve_lambda_numeric(double a, const RandersConfig& cfg, int samples) {
  const Circle<double> circle(a);
  double ab = 0.0, bb = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t = kTwoPi * i / samples;
    const double r0 = el_residual(circle, {0.0, cfg}, t);
    const double r1 = el_residual(circle, {1.0, cfg}, t);
    const double slope = r1 - r0;
    ab += r0 * slope;
    bb += slope * slope;
  }
  if (!(bb > 0.0)) throw NumericalError("lambda coefficient of the residual vanishes");
  return -ab / bb;
}

Vec2 normality(const PolarFourierCurve<double>& curve, const RandersConfig& cfg, double t,
               const Numerics& num) {
  (void)cfg;  // the length integrand does not depend on b
  const auto s = curve.eval(t);
  const LengthGradient grad = length_integrand_gradient(s.point, s.velocity);
  Vec2 p;
  for (int i = 0; i < 2; ++i) {
    auto gv_i = [&](double tau) {
      const auto st = curve.eval(tau);
      return length_integrand_gradient(st.point, st.velocity).gv[i];
    };
    p[i] = grad.gx[i] - fd::central(gv_i, t, num.fd_step);
  }
  return p;
}

Vec2 normality(const Circle<double>& circle, const RandersConfig& cfg, double t,
               const Numerics& num) {
  return normality(PolarFourierCurve<double>(circle), cfg, t, num);
}

double weierstrass_E(const Vec2& p, const Vec2& xdot, const Vec2& u, const LagrangeSystem& sys) {
  require_in_disc(p);
  require_nonzero(xdot);
  require_nonzero(u);
  return lagrangian(p, u, sys) - lagrangian(p, xdot, sys) -
         (u - xdot).dot(lagrangian_velocity_gradient(p, xdot, sys));
}

double weierstrass_closed_form(const Vec2& p, const Vec2& xdot, const Vec2& u,
                               const LagrangeSystem& sys) {
  const double speed = xdot.norm();
  return 2.0 * sys.lambda / ((1.0 - p.squaredNorm()) * speed) *
         (u.norm() * speed - xdot.dot(u));
}

double h1_along(const Circle<double>& circle, const LagrangeSystem& sys, double t,
                const Numerics& num) {
  const auto s = circle.eval(t);
  const Mat4 H = lagrangian_hessian(s.point, s.velocity, sys, num);
  return (H(2, 2) + H(3, 3)) / s.velocity.squaredNorm();
}

double hessian_velocity_form(const Circle<double>& circle, const LagrangeSystem& sys, double t,
                             const Vec2& y, const Numerics& num) {
  const auto s = circle.eval(t);
  const Mat4 H = lagrangian_hessian(s.point, s.velocity, sys, num);
  return y.dot(H.bottomRightCorner<2, 2>() * y);
}

JacobiCoefficients jacobi_coeffs(const Circle<double>& circle, const LagrangeSystem& sys,
                                 double t, const Numerics& num) {
  const double chart_margin = 0.05;
  auto check_chart = [&](double tau) {
    const auto s = circle.eval(tau);
    if (std::abs(s.velocity[1]) < chart_margin * s.velocity.norm())
      throw DomainError("Jacobi chart is singular: x2' vanishes near t = " + std::to_string(tau));
  };
  check_chart(t - 2.0 * num.outer_t_step);
  check_chart(t);
  check_chart(t + 2.0 * num.outer_t_step);

  auto K_at = [&](double tau) {
    const auto s = circle.eval(tau);
    const Vec2 acc = circle.acceleration(tau);
    const Mat4 H = lagrangian_hessian(s.point, s.velocity, sys, num);
    const double h1 = H(2, 2) / (s.velocity[1] * s.velocity[1]);
    return H(0, 2) - s.velocity[1] * acc[1] * h1;
  };
  auto slope_ratio = [&](double tau) {
    const auto s = circle.eval(tau);
    return s.velocity[0] / s.velocity[1];
  };

  const auto s = circle.eval(t);
  const Vec2 acc = circle.acceleration(t);
  const double v2sq = s.velocity[1] * s.velocity[1];
  const Mat4 H = lagrangian_hessian(s.point, s.velocity, sys, num);
  const Mat4 G = length_integrand_hessian(s.point, s.velocity, num);

  JacobiCoefficients jc;
  jc.h1 = H(2, 2) / v2sq;
  jc.K = K_at(t);
  const double dK = fd::central4(K_at, t, num.outer_t_step);
  jc.h2 = (H(0, 0) - acc[1] * acc[1] * jc.h1 - dK) / v2sq;
  const double d_ratio = fd::central4(slope_ratio, t, num.hessian_rel_step);
  jc.U = G(0, 3) - G(2, 1) - G(2, 2) * d_ratio;
  return jc;
}

namespace {

using State = Eigen::Matrix<double, 9, 1>;

struct ScanSeries {
  std::vector<double> c;
  std::vector<double> D;
  double endpoint_D = 0.0;
};

// theta_j stored as (y, y', integral of U y) at offset 3 j.
ScanSeries integrate_scan(const JacobiCoefficients& jc, double start, int steps,
                          int scan_points) {
  auto rhs = [&](double, const State& s) {
    State d;
    for (int j = 0; j < 3; ++j) {
      const double y = s[3 * j], yp = s[3 * j + 1];
      const double mu = j == 2 ? 1.0 : 0.0;
      d[3 * j] = yp;
      d[3 * j + 1] = (jc.h2 * y + mu * jc.U) / jc.h1;
      d[3 * j + 2] = jc.U * y;
    }
    return d;
  };
  State s = State::Zero();
  s[0] = 1.0;  // theta_1(start) = 1
  s[4] = 1.0;  // theta_2'(start) = 1

  auto determinant = [](const State& st) {
    Eigen::Matrix3d M;
    M << 1.0, 0.0, 0.0, st[0], st[3], st[6], st[2], st[5], st[8];
    return M.determinant();
  };

  const double h = kTwoPi / steps;
  const int stride = steps / scan_points;
  ScanSeries out;
  for (int i = 1; i <= steps; ++i) {
    s = ode::rk4_step(rhs, start + (i - 1) * h, s, h);
    if (i % stride != 0) continue;
    if (i == steps) {
      out.endpoint_D = determinant(s);
    } else {
      out.c.push_back(start + i * h);
      out.D.push_back(determinant(s));
    }
  }
  return out;
}

}  // namespace

ConjugateScanReport conjugate_scan(const Circle<double>& circle, const LagrangeSystem& sys,
                                   const ConjugateScanOptions& opts) {
  if (opts.scan_points < 4 || opts.steps % opts.scan_points != 0)
    throw DomainError("scan points must divide the RK4 step count");

  ConjugateScanReport rep;
  rep.coefficients = jacobi_coeffs(circle, sys, opts.start, opts.numerics);
  const JacobiCoefficients& jc = rep.coefficients;
  if (jc.h1 == 0.0) throw NumericalError("h1 vanishes; Jacobi equation is degenerate");

  // Rotational symmetry makes h1, h2, U constant along the circle; K is chart-dependent.
  for (double off : {0.25 * kPi, 0.75 * kPi, kPi, 1.25 * kPi, 1.75 * kPi}) {
    const JacobiCoefficients other = jacobi_coeffs(circle, sys, opts.start + off, opts.numerics);
    auto same = [](double x, double y) {
      return std::abs(x - y) <= 1e-6 * std::max(1.0, std::abs(x));
    };
    if (!same(jc.h1, other.h1) || !same(jc.h2, other.h2) || !same(jc.U, other.U))
      throw NumericalError("Jacobi coefficients are not constant along the circle");
  }

  ScanSeries coarse = integrate_scan(jc, opts.start, opts.steps, opts.scan_points);
  ScanSeries fine = integrate_scan(jc, opts.start, 2 * opts.steps, opts.scan_points);
  for (std::size_t k = 0; k < coarse.D.size(); ++k) {
    const double rel = std::abs(coarse.D[k] - fine.D[k]) / std::abs(fine.D[k]);
    rep.max_halving_change = std::max(rep.max_halving_change, rel);
  }
  if (!(rep.max_halving_change <= opts.halving_tol)) {
    char msg[96];
    std::snprintf(msg, sizeof msg, "step halving changed D by %.3g (relative)",
                  rep.max_halving_change);
    throw IntegrationError(msg);
  }

  rep.c_values = std::move(coarse.c);
  rep.D_values = std::move(coarse.D);
  rep.endpoint_D = coarse.endpoint_D;

  const auto& D = rep.D_values;
  double max_abs = 0.0;
  rep.min_abs_D = std::numeric_limits<double>::infinity();
  for (double d : D) {
    max_abs = std::max(max_abs, std::abs(d));
    rep.min_abs_D = std::min(rep.min_abs_D, std::abs(d));
  }
  for (std::size_t k = 0; k < D.size(); ++k) {
    if (D[k] == 0.0) rep.zero_crossing = true;
    if (k + 1 < D.size() && std::signbit(D[k]) != std::signbit(D[k + 1])) rep.zero_crossing = true;
    // A touching zero shows up as an interior local minimum of |D| near zero.
    if (k > 0 && k + 1 < D.size() && std::abs(D[k]) <= std::abs(D[k - 1]) &&
        std::abs(D[k]) <= std::abs(D[k + 1]) && std::abs(D[k]) < opts.zero_tol * max_abs)
      rep.zero_crossing = true;
  }
  return rep;
}

// -- Second variation -------------------------------------------------------------

TrigVariation::TrigVariation(int harmonics, Eigen::VectorXd coeffs, bool windowed)
    : harmonics_(harmonics), coeffs_(std::move(coeffs)), windowed_(windowed) {
  if (harmonics < 0 || coeffs_.size() != dimension(harmonics))
    throw DomainError("variation coefficient vector has the wrong size");
}

std::pair<Vec2, Vec2> TrigVariation::eval(double t) const {
  const int per = 2 * harmonics_ + 1;
  Vec2 p = Vec2::Zero(), dp = Vec2::Zero();
  for (int comp = 0; comp < 2; ++comp) {
    const double* c = coeffs_.data() + comp * per;
    p[comp] = c[0];
    for (int k = 1; k <= harmonics_; ++k) {
      const double ck = std::cos(k * t), sk = std::sin(k * t);
      const double a = c[2 * k - 1], b = c[2 * k];
      p[comp] += a * ck + b * sk;
      dp[comp] += k * (b * ck - a * sk);
    }
  }
  if (!windowed_) return {p, dp};
  const double w = 0.5 * (1.0 - std::cos(t));  // sin^2(t/2)
  const double dw = 0.5 * std::sin(t);
  return {w * p, dw * p + w * dp};
}

SecondVariation::SecondVariation(const Circle<double>& circle, const LagrangeSystem& sys,
                                 const QuadratureGrid& grid, const Numerics& num)
    : circle_(circle), grid_(grid) {
  for (double t : grid_.nodes()) {
    const auto s = circle_.eval(t);
    hessians_.push_back(lagrangian_hessian(s.point, s.velocity, sys, num));
    gradients_.push_back(length_integrand_gradient(s.point, s.velocity));
    velocities_.push_back(s.velocity);
  }
}

double SecondVariation::operator()(const TrigVariation& y) const {
  double acc = 0.0;
  for (int i = 0; i < grid_.n(); ++i) {
    const auto [yv, dy] = y.eval(grid_.nodes()[i]);
    const Mat4& H = hessians_[i];
    acc += yv.dot(H.topLeftCorner<2, 2>() * yv) + 2.0 * yv.dot(H.topRightCorner<2, 2>() * dy) +
           dy.dot(H.bottomRightCorner<2, 2>() * dy);
  }
  return acc * grid_.weight();
}

double SecondVariation::constraint(const TrigVariation& y) const {
  double acc = 0.0;
  for (int i = 0; i < grid_.n(); ++i) {
    const auto [yv, dy] = y.eval(grid_.nodes()[i]);
    acc += gradients_[i].gx.dot(yv) + gradients_[i].gv.dot(dy);
  }
  return acc * grid_.weight();
}

TrigVariation SecondVariation::project(const TrigVariation& y) const {
  const int dim = TrigVariation::dimension(y.harmonics());
  Eigen::VectorXd ell(dim);
  for (int j = 0; j < dim; ++j)
    ell[j] = constraint(TrigVariation(y.harmonics(), Eigen::VectorXd::Unit(dim, j), y.windowed()));
  const double norm2 = ell.squaredNorm();
  if (!(norm2 > 1e-24)) throw NumericalError("constraint functional vanishes on the probe basis");
  Eigen::VectorXd c = y.coeffs() - (ell.dot(y.coeffs()) / norm2) * ell;
  return TrigVariation(y.harmonics(), std::move(c), y.windowed());
}

bool SecondVariation::is_tangential(const TrigVariation& y, double rel_tol) const {
  double normal = 0.0, total = 0.0;
  for (int i = 0; i < grid_.n(); ++i) {
    const Vec2 yv = y.eval(grid_.nodes()[i]).first;
    const Vec2& v = velocities_[i];
    const double w = v[0] * yv[1] - v[1] * yv[0];
    normal += w * w;
    total += yv.squaredNorm() * v.squaredNorm();
  }
  return normal <= rel_tol * rel_tol * total;
}

double second_variation(const Circle<double>& circle, const LagrangeSystem& sys,
                        const TrigVariation& y) {
  return SecondVariation(circle, sys)(y);
}

std::vector<TrigVariation> random_probes(const SecondVariation& form, int count,
                                         std::uint64_t seed, int harmonics) {
  const int dim = TrigVariation::dimension(harmonics);
  std::vector<TrigVariation> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    bool found = false;
    for (int attempt = 0; attempt < 100 && !found; ++attempt) {
      std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                        static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(attempt)};
      std::mt19937_64 rng(seq);
      std::normal_distribution<double> normal(0.0, 1.0);
      Eigen::VectorXd c(dim);
      for (int j = 0; j < dim; ++j) c[j] = normal(rng);
      TrigVariation y = form.project(TrigVariation(harmonics, std::move(c)));
      if (form.is_tangential(y, 1e-6)) continue;
      out.push_back(std::move(y));
      found = true;
    }
    if (!found) throw ExhaustionError("could not draw a non-tangential probe variation");
  }
  return out;
}

// -- Certificate ------------------------------------------------------------------

ExtremalityCertificate build_certificate(double a, const RandersConfig& cfg,
                                         const CertificateOptions& opts) {
  validate(cfg);
  const Circle<double> circle(a);
  ExtremalityCertificate cert;
  cert.a = a;
  cert.cfg = cfg;
  cert.lambda = opts.lambda_override.value_or(lambda_for_circle(a, cfg));
  const LagrangeSystem sys{cert.lambda, cfg};
  auto fail = [&](std::string reason) { cert.reasons.push_back(std::move(reason)); };

  // (i) Euler-Lagrange and (ii) normality on a uniform t grid.
  constexpr int kTSamples = 64;
  cert.normality_min = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kTSamples; ++i) {
    const double t = kTwoPi * i / kTSamples;
    cert.el_residual_max = std::max(cert.el_residual_max, std::abs(el_residual(circle, sys, t)));
    cert.normality_min = std::min(cert.normality_min, normality(circle, cfg, t).norm());
  }
  if (!(cert.el_residual_max <= opts.tol)) fail("Euler-Lagrange residual exceeds tolerance");
  if (!(cert.normality_min > opts.tol)) fail("circle is not normal: (P1, P2) vanishes");

  // (iii) Weierstrass excess and (v) velocity Hessian form, away from the tangent direction.
  constexpr int kTDirs = 16, kAngles = 32;
  constexpr double kAngleGap = 1e-2;
  cert.weierstrass_max = -std::numeric_limits<double>::infinity();
  cert.hess_form_max = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < kTDirs; ++i) {
    const double t = kTwoPi * i / kTDirs;
    const auto s = circle.eval(t);
    for (int k = 0; k < kAngles; ++k) {
      const double theta = kAngleGap + (kTwoPi - 2.0 * kAngleGap) * k / (kAngles - 1);
      const Eigen::Rotation2Dd rot(theta);
      const Vec2 dir = rot * s.velocity.normalized();
      for (double radial : {0.95, 1.0, 1.05}) {
        const Vec2 p = std::min(radial * a, 0.5 * (1.0 + a)) / a * s.point;
        for (double scale : {0.5, 1.0, 2.0}) {
          const Vec2 u = scale * s.velocity.norm() * dir;
          cert.weierstrass_max = std::max(cert.weierstrass_max, weierstrass_E(p, s.velocity, u, sys));
        }
      }
      cert.hess_form_max =
          std::max(cert.hess_form_max, hessian_velocity_form(circle, sys, t, dir));
    }
  }
  if (!(cert.weierstrass_max < 0.0)) fail("Weierstrass excess is not negative");
  if (!(cert.hess_form_max < 0.0)) fail("velocity Hessian form is not negative");

  cert.h1 = h1_along(circle, sys, 0.0);

  // Jacobi conjugate-point scan (required); the sign of h1 is reported alongside.
  try {
    cert.conjugate = conjugate_scan(circle, sys, opts.scan);
    if (cert.conjugate.zero_crossing) fail("conjugate point detected: D(a, c) vanishes");
  } catch (const std::exception& e) {
    cert.conjugate.zero_crossing = true;
    fail(std::string("conjugate scan failed: ") + e.what());
  }

  // (iv) second variation on constrained probes.
  try {
    const SecondVariation form(circle, sys);
    cert.second_variation_max = -std::numeric_limits<double>::infinity();
    for (const TrigVariation& y : random_probes(form, opts.probes, opts.seed, opts.probe_harmonics))
      cert.second_variation_max = std::max(cert.second_variation_max, form(y));
    if (!(cert.second_variation_max < 0.0)) fail("second variation is not negative");
  } catch (const std::exception& e) {
    fail(std::string("second variation failed: ") + e.what());
  }

  cert.pass = cert.reasons.empty();
  return cert;
}

}  // namespace randers
