#pragma once

#include <Eigen/Dense>

namespace randers::ode {

/// One classical fourth-order Runge-Kutta step for y' = f(t, y).
template <typename F, typename Scalar, int N>
Eigen::Matrix<Scalar, N, 1> rk4_step(F&& f, Scalar t, const Eigen::Matrix<Scalar, N, 1>& y, Scalar h) {
  using Vec = Eigen::Matrix<Scalar, N, 1>;
  const Scalar half = h / Scalar(2);
  const Vec k1 = f(t, y);
  const Vec k2 = f(t + half, Vec(y + half * k1));
  const Vec k3 = f(t + half, Vec(y + half * k2));
  const Vec k4 = f(t + h, Vec(y + h * k3));
  return y + (h / Scalar(6)) * (k1 + Scalar(2) * k2 + Scalar(2) * k3 + k4);
}

}  // namespace randers::ode
