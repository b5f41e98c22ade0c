/** \file matrices.hpp
 *  \brief Small fixed-size dense matrices (row-major) and displacement directions.
 */
#ifndef ADJCHAR_MATRICES_HPP
#define ADJCHAR_MATRICES_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>

#include "adjchar/errors.hpp"

namespace adjchar {

template <int N>
struct MatN {
  std::array<double, static_cast<std::size_t>(N) * N> a{};

  double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * N + j]; }
  double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * N + j]; }
  static constexpr int order() { return N; }
};

using Mat4 = MatN<4>;
using Mat5 = MatN<5>;
using Mat8 = MatN<8>;

/// Determinant by partially pivoted LU, in place on a copy.
template <int N>
double lu_determinant(MatN<N> m) {
  double det = 1.0;
  for (int k = 0; k < N; ++k) {
    int piv = k;
    double best = std::fabs(m(k, k));
    for (int i = k + 1; i < N; ++i) {
      const double cand = std::fabs(m(i, k));
      if (cand > best) {
        best = cand;
        piv = i;
      }
    }
    if (best == 0.0) return 0.0;
    if (piv != k) {
      for (int j = 0; j < N; ++j) std::swap(m(k, j), m(piv, j));
      det = -det;
    }
    det *= m(k, k);
    const double inv = 1.0 / m(k, k);
    for (int i = k + 1; i < N; ++i) {
      const double f = m(i, k) * inv;
      if (f == 0.0) continue;
      for (int j = k + 1; j < N; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

/// Unit displacement direction (dx, dy); normalized on construction.
class Direction {
 public:
  Direction(double dx, double dy) {
    const double n = std::hypot(dx, dy);
    if (!(n > 0.0)) throw DegenerateDirection("zero direction vector");
    dx_ = dx / n;
    dy_ = dy / n;
  }

  static Direction from_angle(double theta) {
    return Direction(std::cos(theta), std::sin(theta));
  }

  double dx() const { return dx_; }
  double dy() const { return dy_; }
  /// Slope dy/dx; absent for vertical directions.
  std::optional<double> slope() const {
    if (dx_ == 0.0) return std::nullopt;
    return dy_ / dx_;
  }
  Direction reversed() const { return Direction(-dx_, -dy_, 0); }

 private:
  Direction(double dx, double dy, int) : dx_(dx), dy_(dy) {}
  double dx_;
  double dy_;
};

}  // namespace adjchar

#endif
