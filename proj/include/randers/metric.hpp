#pragma once

// Randers Poincare disc F = alpha + beta on the open unit disc.
//
//   alpha = 2 |dx| / (1 - r^2)                      (curvature -1)
//   beta  = df,  f = b log((1 + r) / (1 - r))       (|beta|_alpha = b)
//
// All functions are pure and templated on the scalar type.

#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "randers/errors.hpp"
#include "randers/finite_diff.hpp"

namespace randers {

enum class VolumeForm { BusemannHausdorff, HolmesThompson, Maximum, Minimum };

inline constexpr VolumeForm kAllVolumeForms[] = {VolumeForm::BusemannHausdorff,
                                                 VolumeForm::HolmesThompson, VolumeForm::Maximum,
                                                 VolumeForm::Minimum};

inline std::string_view to_string(VolumeForm form) {
  switch (form) {
    case VolumeForm::BusemannHausdorff: return "bh";
    case VolumeForm::HolmesThompson: return "ht";
    case VolumeForm::Maximum: return "max";
    case VolumeForm::Minimum: return "min";
  }
  return "?";
}

inline std::optional<VolumeForm> parse_volume_form(std::string_view s) {
  for (VolumeForm f : kAllVolumeForms)
    if (to_string(f) == s) return f;
  return std::nullopt;
}

struct RandersConfig {
  double b = 0.0;  // constant alpha-norm of beta, 0 <= b < 1
  VolumeForm form = VolumeForm::BusemannHausdorff;
};

inline void validate(const RandersConfig& cfg) {
  if (!(cfg.b >= 0.0 && cfg.b < 1.0))
    throw DomainError("b must satisfy 0 <= b < 1 (got " + std::to_string(cfg.b) + ")");
}

template <typename Scalar>
using DiscPoint = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar>
using Tangent = Eigen::Matrix<Scalar, 2, 1>;
/// g_ij at a fixed (point, direction); symmetric positive definite.
template <typename Scalar>
using FundamentalTensor = Eigen::Matrix<Scalar, 2, 2>;

template <typename Scalar>
struct ChristoffelSymbols {
  Eigen::Matrix<Scalar, 2, 2> gamma1;  // gamma^1_ij
  Eigen::Matrix<Scalar, 2, 2> gamma2;  // gamma^2_ij

  const Eigen::Matrix<Scalar, 2, 2>& operator[](int k) const { return k == 0 ? gamma1 : gamma2; }
};

template <typename Scalar>
void require_in_disc(const DiscPoint<Scalar>& p) {
  using std::isfinite;
  if (!(isfinite(p[0]) && isfinite(p[1])) || !(p.squaredNorm() < Scalar(1)))
    throw DomainError("point lies outside the open unit disc");
}

template <typename Scalar>
void require_nonzero(const Tangent<Scalar>& v) {
  if (v.squaredNorm() == Scalar(0)) throw DomainError("tangent vector must be nonzero");
}

/// Conformal factor 2 / (1 - r^2) of the Poincare metric.
template <typename Scalar>
Scalar conformal_factor(const DiscPoint<Scalar>& p) {
  return Scalar(2) / (Scalar(1) - p.squaredNorm());
}

template <typename Scalar>
Eigen::Matrix<Scalar, 2, 2> alpha_tensor(const DiscPoint<Scalar>& p) {
  const Scalar c = conformal_factor(p);
  return (c * c) * Eigen::Matrix<Scalar, 2, 2>::Identity();
}

template <typename Scalar>
Scalar alpha_norm(const DiscPoint<Scalar>& p, const Tangent<Scalar>& v) {
  require_in_disc(p);
  return conformal_factor(p) * v.norm();
}

/// Components b_i of beta. Singular in direction at the origin unless b = 0.
template <typename Scalar>
Tangent<Scalar> beta_covector(const DiscPoint<Scalar>& p, const RandersConfig& cfg) {
  require_in_disc(p);
  if (cfg.b == 0.0) return Tangent<Scalar>::Zero();
  const Scalar r = p.norm();
  if (r == Scalar(0)) throw DomainError("beta is undefined at the origin");
  return (Scalar(2) * Scalar(cfg.b) / ((Scalar(1) - r * r) * r)) * p;
}

template <typename Scalar>
Scalar beta_value(const DiscPoint<Scalar>& p, const Tangent<Scalar>& v, const RandersConfig& cfg) {
  return beta_covector(p, cfg).dot(v);
}

/// a^{ij} b_i b_j; equals b^2 everywhere off the origin.
template <typename Scalar>
Scalar beta_norm_squared(const DiscPoint<Scalar>& p, const RandersConfig& cfg) {
  const Tangent<Scalar> bi = beta_covector(p, cfg);
  const Scalar c = conformal_factor(p);
  return bi.squaredNorm() / (c * c);
}

/// Potential f with df = beta.
template <typename Scalar>
Scalar potential_f(const DiscPoint<Scalar>& p, const RandersConfig& cfg) {
  require_in_disc(p);
  using std::log;
  const Scalar r = p.norm();
  return Scalar(cfg.b) * log((Scalar(1) + r) / (Scalar(1) - r));
}

template <typename Scalar>
Scalar finsler_norm(const DiscPoint<Scalar>& p, const Tangent<Scalar>& v, const RandersConfig& cfg) {
  require_nonzero(v);
  return alpha_norm(p, v) + beta_value(p, v, cfg);
}

/// g_ij = 1/2 d^2 F^2 / dy^i dy^j by second-order central differences with
/// step rel_step * |v|. Throws NumericalError if the result is not positive definite.
template <typename Scalar>
FundamentalTensor<Scalar> fundamental_tensor(const DiscPoint<Scalar>& p, const Tangent<Scalar>& v,
                                             const RandersConfig& cfg,
                                             Scalar rel_step = Scalar(1e-4)) {
  require_nonzero(v);
  require_in_disc(p);
  const Tangent<Scalar> bi = beta_covector(p, cfg);
  const Scalar c = conformal_factor(p);
  auto half_f2 = [&](const Tangent<Scalar>& y) {
    const Scalar F = c * y.norm() + bi.dot(y);
    return Scalar(0.5) * F * F;
  };
  const Scalar h = rel_step * v.norm();
  FundamentalTensor<Scalar> g = fd::hessian2(half_f2, v, Tangent<Scalar>(Tangent<Scalar>::Constant(h)));
  if (!(g(0, 0) > Scalar(0)) || !(g.determinant() > Scalar(0)))
    throw NumericalError("fundamental tensor is not positive definite; check the difference step");
  return g;
}

/// kappa(form, b): constant ratio between the Finsler volume density and sigma_alpha.
inline double volume_factor(const RandersConfig& cfg) {
  const double b = cfg.b;
  switch (cfg.form) {
    case VolumeForm::BusemannHausdorff: return std::pow(1.0 - b * b, 1.5);
    case VolumeForm::HolmesThompson: return 1.0;
    case VolumeForm::Maximum: return (1.0 + b) * (1.0 + b) * (1.0 + b);
    case VolumeForm::Minimum: return (1.0 - b) * (1.0 - b) * (1.0 - b);
  }
  return 1.0;
}

/// sigma_alpha(p) = sqrt(det a_ij) = 4 / (1 - r^2)^2.
template <typename Scalar>
Scalar riemannian_density(const DiscPoint<Scalar>& p) {
  require_in_disc(p);
  const Scalar c = conformal_factor(p);
  return c * c;
}

template <typename Scalar>
Scalar volume_density(const DiscPoint<Scalar>& p, const RandersConfig& cfg) {
  return Scalar(volume_factor(cfg)) * riemannian_density(p);
}

template <typename Scalar>
ChristoffelSymbols<Scalar> christoffel(const DiscPoint<Scalar>& p) {
  require_in_disc(p);
  const Scalar c = conformal_factor(p);
  const Scalar x1 = p[0], x2 = p[1];
  ChristoffelSymbols<Scalar> gs;
  gs.gamma1 << x1, x2, x2, -x1;
  gs.gamma2 << -x2, x1, x1, x2;
  gs.gamma1 *= c;
  gs.gamma2 *= c;
  return gs;
}

/// Sectional-curvature parameter of alpha (-1 = -lambda^2 / 4).
inline constexpr double kYasudaShimadaLambda = 2.0;

/// R_ij = d_j b_i - b_k gamma^k_ij - lambda (a_ij - b_i b_j). A Randers metric over
/// alpha has constant flag curvature -lambda^2/4 only if R vanishes identically.
/// d_j b_i uses central differences with the given step.
template <typename Scalar>
Eigen::Matrix<Scalar, 2, 2> yasuda_shimada_residual(const DiscPoint<Scalar>& p,
                                                    const RandersConfig& cfg,
                                                    Scalar step = Scalar(1e-5)) {
  require_in_disc(p);
  if (p.norm() <= Scalar(4) * step)
    throw DomainError("Yasuda-Shimada residual is singular near the origin");
  const Tangent<Scalar> bi = beta_covector(p, cfg);
  const auto gs = christoffel(p);
  const Eigen::Matrix<Scalar, 2, 2> a = alpha_tensor(p);
  Eigen::Matrix<Scalar, 2, 2> db;  // db(i, j) = d b_i / d x^j
  for (int j = 0; j < 2; ++j) {
    DiscPoint<Scalar> e = DiscPoint<Scalar>::Zero();
    e[j] = step;
    db.col(j) = (beta_covector(DiscPoint<Scalar>(p + e), cfg) -
                 beta_covector(DiscPoint<Scalar>(p - e), cfg)) /
                (Scalar(2) * step);
  }
  const Scalar lambda = Scalar(kYasudaShimadaLambda);
  return db - bi[0] * gs.gamma1 - bi[1] * gs.gamma2 - lambda * (a - bi * bi.transpose());
}

}  // namespace randers
