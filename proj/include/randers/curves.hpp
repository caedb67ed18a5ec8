#pragma once

// Star-shaped closed curves in polar-graph form gamma(t) = r(t) (cos t, sin t),
// t in [0, 2 pi), with analytic velocities.

#include <cmath>
#include <concepts>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "randers/errors.hpp"
#include "randers/metric.hpp"

namespace randers {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <typename Scalar>
Scalar reduce_parameter(Scalar t) {
  using std::fmod;
  Scalar r = fmod(t, Scalar(kTwoPi));
  if (r < Scalar(0)) r += Scalar(kTwoPi);
  return r;
}

template <typename Scalar>
struct CurveSample {
  Scalar t;
  DiscPoint<Scalar> point;
  Tangent<Scalar> velocity;
};

namespace detail {

template <typename Scalar>
CurveSample<Scalar> polar_sample(Scalar t, Scalar r, Scalar rdot) {
  using std::cos;
  using std::sin;
  const Scalar c = cos(t), s = sin(t);
  CurveSample<Scalar> out{t, {r * c, r * s}, {rdot * c - r * s, rdot * s + r * c}};
  if (out.velocity.squaredNorm() == Scalar(0))
    throw AdmissibilityError("curve velocity vanishes at t = " + std::to_string(double(t)));
  return out;
}

template <typename Scalar>
Tangent<Scalar> polar_acceleration(Scalar t, Scalar r, Scalar rdot, Scalar rddot) {
  using std::cos;
  using std::sin;
  const Scalar c = cos(t), s = sin(t);
  return {rddot * c - Scalar(2) * rdot * s - r * c, rddot * s + Scalar(2) * rdot * c - r * s};
}

}  // namespace detail

/// Origin-centred circle of Euclidean radius a.
template <typename Scalar = double>
class Circle {
 public:
  explicit Circle(Scalar a) : a_(a) {
    if (!(a > Scalar(0) && a < Scalar(1)))
      throw DomainError("circle radius must satisfy 0 < a < 1");
  }

  Scalar a() const { return a_; }
  Scalar radius(Scalar) const { return a_; }
  Scalar radius_dot(Scalar) const { return Scalar(0); }
  Scalar radius_ddot(Scalar) const { return Scalar(0); }

  CurveSample<Scalar> eval(Scalar t) const {
    return detail::polar_sample(reduce_parameter(t), a_, Scalar(0));
  }
  Tangent<Scalar> acceleration(Scalar t) const {
    return detail::polar_acceleration(reduce_parameter(t), a_, Scalar(0), Scalar(0));
  }

 private:
  Scalar a_;
};

/// r(t) = a0 + sum_k (c_k cos kt + s_k sin kt), k = 1..K.
template <typename Scalar = double>
class PolarFourierCurve {
 public:
  PolarFourierCurve() = default;
  PolarFourierCurve(Scalar a0, std::vector<Scalar> cos_coeffs, std::vector<Scalar> sin_coeffs)
      : a0_(a0), cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)) {
    if (cos_.size() != sin_.size())
      throw DomainError("cos and sin coefficient lists must have equal length");
  }
  explicit PolarFourierCurve(const Circle<Scalar>& c) : a0_(c.a()) {}

  Scalar a0() const { return a0_; }
  int harmonics() const { return static_cast<int>(cos_.size()); }
  const std::vector<Scalar>& cos_coeffs() const { return cos_; }
  const std::vector<Scalar>& sin_coeffs() const { return sin_; }

  bool is_circle() const {
    for (std::size_t k = 0; k < cos_.size(); ++k)
      if (cos_[k] != Scalar(0) || sin_[k] != Scalar(0)) return false;
    return true;
  }

  Scalar radius(Scalar t) const { return a0_ + series(t, 0); }
  Scalar radius_dot(Scalar t) const { return series(t, 1); }
  Scalar radius_ddot(Scalar t) const { return series(t, 2); }

  CurveSample<Scalar> eval(Scalar t) const {
    const Scalar tr = reduce_parameter(t);
    return detail::polar_sample(tr, radius(tr), radius_dot(tr));
  }
  Tangent<Scalar> acceleration(Scalar t) const {
    const Scalar tr = reduce_parameter(t);
    return detail::polar_acceleration(tr, radius(tr), radius_dot(tr), radius_ddot(tr));
  }

  PolarFourierCurve with_base_radius(Scalar a0) const {
    PolarFourierCurve out = *this;
    out.a0_ = a0;
    return out;
  }

  /// Curve whose radius function is t -> r(t + phi).
  PolarFourierCurve shifted(Scalar phi) const {
    using std::cos;
    using std::sin;
    PolarFourierCurve out = *this;
    for (std::size_t i = 0; i < cos_.size(); ++i) {
      const Scalar k = Scalar(i + 1);
      const Scalar c = cos(k * phi), s = sin(k * phi);
      out.cos_[i] = cos_[i] * c + sin_[i] * s;
      out.sin_[i] = sin_[i] * c - cos_[i] * s;
    }
    return out;
  }

 private:
  // order-th derivative of the harmonic part
  Scalar series(Scalar t, int order) const {
    using std::cos;
    using std::sin;
    Scalar acc = 0;
    for (std::size_t i = 0; i < cos_.size(); ++i) {
      const Scalar k = Scalar(i + 1);
      const Scalar c = cos(k * t), s = sin(k * t);
      switch (order) {
        case 0: acc += cos_[i] * c + sin_[i] * s; break;
        case 1: acc += k * (sin_[i] * c - cos_[i] * s); break;
        default: acc -= k * k * (cos_[i] * c + sin_[i] * s); break;
      }
    }
    return acc;
  }

  Scalar a0_ = Scalar(0.5);
  std::vector<Scalar> cos_;
  std::vector<Scalar> sin_;
};

template <typename C>
concept PolarCurve = requires(const C& c, double t) {
  { c.radius(t) } -> std::convertible_to<double>;
  { c.radius_dot(t) } -> std::convertible_to<double>;
  c.eval(t);
  c.acceleration(t);
};

template <PolarCurve C>
auto eval(const C& curve, double t) {
  return curve.eval(t);
}

inline constexpr int kDefaultAdmissibilityGrid = 4096;
inline constexpr double kDefaultAdmissibilityMargin = 1e-9;

/// True iff r(t) stays in (eps, 1 - eps) and |gamma'(t)| > eps on a uniform grid.
template <PolarCurve C>
bool check_admissible(const C& curve, int grid_size = kDefaultAdmissibilityGrid,
                      double eps = kDefaultAdmissibilityMargin) {
  if (grid_size < 64) throw DomainError("admissibility grid needs at least 64 points");
  for (int i = 0; i < grid_size; ++i) {
    const double t = kTwoPi * i / grid_size;
    const double r = curve.radius(t);
    const double rd = curve.radius_dot(t);
    if (!(r > eps && r < 1.0 - eps)) return false;
    if (!(std::sqrt(r * r + rd * rd) > eps)) return false;
  }
  return true;
}

}  // namespace randers
