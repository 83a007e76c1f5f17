#pragma once

// Independent reference computations used to cross-check the library. They
// use plain loops and scalar arithmetic and share no code with src/.

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace duopoly::oracle {

/// Affine pair F = c1 - a11 x - a12 y, f = c2 - a21 x - a22 y, iterated n times.
struct Affine {
  double c1, a11, a12, c2, a21, a22;

  std::vector<std::pair<double, double>> trace(double x, double y, int n) const {
    std::vector<std::pair<double, double>> out{{x, y}};
    for (int i = 0; i < n; ++i) {
      const double nx = c1 - a11 * x - a12 * y;
      const double ny = c2 - a21 * x - a22 * y;
      x = nx;
      y = ny;
      out.emplace_back(x, y);
    }
    return out;
  }

  /// Cramer's rule on (1 + a11) x + a12 y = c1, a21 x + (1 + a22) y = c2.
  std::pair<double, double> fixed_point() const {
    const double det = (1 + a11) * (1 + a22) - a12 * a21;
    return {(c1 * (1 + a22) - a12 * c2) / det, ((1 + a11) * c2 - a21 * c1) / det};
  }
};

/// Smallest n with k^n d0 / (1 - k) <= eps, by counting.
inline std::int64_t count_a_priori(double k, double d0, double eps) {
  std::int64_t n = 0;
  double b = d0 / (1 - k);
  while (b > eps) {
    b *= k;
    ++n;
  }
  return n;
}

/// Smallest m with M0 (W/(C d))^{1/q} s^{m/q} / (1 - s^{1/q}) <= eps, by counting.
inline std::int64_t count_a_priori_prox(double s, double C, double q, double d, double M0, double W,
                                        double eps) {
  const double r = std::pow(s, 1.0 / q);
  double b = M0 * std::pow(W / (C * d), 1.0 / q) / (1 - r);
  std::int64_t m = 0;
  while (b > eps) {
    b *= r;
    ++m;
  }
  return m;
}

/// Scalar best-proximity map of the single-good model on [0,1] x [2,3].
inline std::pair<double, double> disjoint_1d_step(double x, double y) {
  return {x / 2 - y / 4 + 1, -x / 4 + y / 2 + 1.25};
}

}  // namespace duopoly::oracle
