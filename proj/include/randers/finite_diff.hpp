#pragma once

#include <Eigen/Dense>

namespace randers::fd {

// Central difference stencils. `f` is any callable Scalar -> Scalar (or
// VectorN -> Scalar for the multivariate helpers).

template <typename F, typename Scalar>
Scalar central(F&& f, Scalar x, Scalar h) {
  return (f(x + h) - f(x - h)) / (Scalar(2) * h);
}

// Fourth-order five-point first derivative.
template <typename F, typename Scalar>
Scalar central4(F&& f, Scalar x, Scalar h) {
  return (f(x - Scalar(2) * h) - Scalar(8) * f(x - h) + Scalar(8) * f(x + h) -
          f(x + Scalar(2) * h)) /
         (Scalar(12) * h);
}

template <typename F, typename Scalar>
Scalar second_central(F&& f, Scalar x, Scalar h) {
  return (f(x + h) - Scalar(2) * f(x) + f(x - h)) / (h * h);
}

/// Hessian of f : R^N -> R with second-order stencils and per-coordinate steps.
template <typename F, typename Scalar, int N>
Eigen::Matrix<Scalar, N, N> hessian2(F&& f, const Eigen::Matrix<Scalar, N, 1>& z,
                                     const Eigen::Matrix<Scalar, N, 1>& steps) {
  using Vec = Eigen::Matrix<Scalar, N, 1>;
  Eigen::Matrix<Scalar, N, N> H;
  const Scalar f0 = f(z);
  for (int i = 0; i < N; ++i) {
    Vec e_i = Vec::Zero();
    e_i[i] = steps[i];
    H(i, i) = (f(Vec(z + e_i)) - Scalar(2) * f0 + f(Vec(z - e_i))) / (steps[i] * steps[i]);
    for (int j = 0; j < i; ++j) {
      Vec e_j = Vec::Zero();
      e_j[j] = steps[j];
      const Scalar v = (f(Vec(z + e_i + e_j)) - f(Vec(z + e_i - e_j)) - f(Vec(z - e_i + e_j)) +
                        f(Vec(z - e_i - e_j))) /
                       (Scalar(4) * steps[i] * steps[j]);
      H(i, j) = v;
      H(j, i) = v;
    }
  }
  return H;
}

/// Hessian of f : R^N -> R with fourth-order stencils. Mixed entries nest two
/// five-point first derivatives (16 evaluations each).
template <typename F, typename Scalar, int N>
Eigen::Matrix<Scalar, N, N> hessian4(F&& f, const Eigen::Matrix<Scalar, N, 1>& z,
                                     const Eigen::Matrix<Scalar, N, 1>& steps) {
  using Vec = Eigen::Matrix<Scalar, N, 1>;
  static constexpr Scalar kOffsets[4] = {-2, -1, 1, 2};
  static constexpr Scalar kWeights[4] = {1, -8, 8, -1};
  Eigen::Matrix<Scalar, N, N> H;
  const Scalar f0 = f(z);
  for (int i = 0; i < N; ++i) {
    Vec e_i = Vec::Zero();
    e_i[i] = steps[i];
    H(i, i) = (-f(Vec(z + Scalar(2) * e_i)) + Scalar(16) * f(Vec(z + e_i)) - Scalar(30) * f0 +
               Scalar(16) * f(Vec(z - e_i)) - f(Vec(z - Scalar(2) * e_i))) /
              (Scalar(12) * steps[i] * steps[i]);
    for (int j = 0; j < i; ++j) {
      Vec e_j = Vec::Zero();
      e_j[j] = steps[j];
      Scalar acc = 0;
      for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q)
          acc += kWeights[p] * kWeights[q] * f(Vec(z + kOffsets[p] * e_i + kOffsets[q] * e_j));
      const Scalar v = acc / (Scalar(144) * steps[i] * steps[j]);
      H(i, j) = v;
      H(j, i) = v;
    }
  }
  return H;
}

}  // namespace randers::fd
