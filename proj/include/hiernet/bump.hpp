#pragma once
// Smooth transition function gating substructure activity.
//
//   b(z) = 1                                              z <= 0
//        = 1 - e^{-eps/z} / (e^{-eps/z} + e^{-eps/(eps-z)})  0 < z < eps
//        = 0                                              z >= eps
//
// On the interior b = sigmoid(r) with r = eps/z - eps/(eps-z), which never
// forms the 0/0 quotient of the two exponentials near either endpoint.

#include <cmath>
#include <cstddef>
#include <span>
#include <string>

#include "hiernet/error.hpp"

namespace hiernet {

namespace detail {

inline double sigmoid(double r) noexcept {
  if (r >= 0.0) return 1.0 / (1.0 + std::exp(-r));
  const double e = std::exp(r);
  return e / (1.0 + e);
}

inline double bump_exponent(double z, double eps) noexcept { return eps / z - eps / (eps - z); }

}  // namespace detail

[[nodiscard]] inline double bump(double z, double eps) noexcept {
  if (z <= 0.0) return 1.0;
  if (z >= eps) return 0.0;
  return detail::sigmoid(detail::bump_exponent(z, eps));
}

/// d b / d z. Zero outside (0, eps); vanishes smoothly at both ends.
[[nodiscard]] inline double bump_derivative(double z, double eps) noexcept {
  if (z <= 0.0 || z >= eps) return 0.0;
  const double r = detail::bump_exponent(z, eps);
  const double e = std::exp(-std::abs(r));
  if (e == 0.0) return 0.0;
  const double s1ms = e / ((1.0 + e) * (1.0 + e));  // sigmoid(r) * (1 - sigmoid(r))
  const double w = eps - z;
  const double dr = -eps / (z * z) - eps / (w * w);
  return s1ms * dr;
}

/// Squared distance of X to the unit vector e_j.
[[nodiscard]] inline double distance2_to_unit(std::span<const double> X, std::size_t j) {
  if (j >= X.size()) throw Error(ErrorKind::IndexOutOfRange, "bump index " + std::to_string(j + 1));
  double z = 0.0;
  for (std::size_t k = 0; k < X.size(); ++k) {
    const double d = k == j ? X[k] - 1.0 : X[k];
    z += d * d;
  }
  return z;
}

/// b_eps(||X - e_j||^2).
[[nodiscard]] inline double bump_j(std::span<const double> X, std::size_t j, double eps) {
  return bump(distance2_to_unit(X, j), eps);
}

}  // namespace hiernet
