#pragma once

// Finite-dimensional metric utilities: points, p-norms, axis-aligned boxes and
// the power-type constants of the l_p modulus of convexity.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace duopoly {

/// A real vector of fixed dimension (quantities and/or prices of one firm).
/// Construction rejects empty vectors and non-finite coordinates.
class Point {
 public:
  Point(std::initializer_list<double> coords);
  explicit Point(std::vector<double> coords);

  static Point zeros(std::size_t dimension);
  static Point filled(std::size_t dimension, double value);

  std::size_t dimension() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }
  const std::vector<double>& values() const noexcept { return coords_; }

  bool operator==(const Point& other) const = default;

  std::string to_string(int precision = 6) const;

 private:
  std::vector<double> coords_;
};

Point operator-(const Point& a, const Point& b);
Point operator+(const Point& a, const Point& b);
Point operator*(double s, const Point& a);

struct PNormSpec {
  PNormSpec(double p, std::size_t dimension);

  double p;
  std::size_t dimension;
};

/// Constants (C, q) with delta(eps) >= C * eps^q on (0, 2].
struct PowerTypeConstants {
  double C;
  double q;
};

/// Closed axis-aligned box lower <= x <= upper.
class Box {
 public:
  Box(Point lower, Point upper);

  /// Box with the same interval [lo, hi] on every axis.
  static Box cube(std::size_t dimension, double lo, double hi);

  const Point& lower() const noexcept { return lower_; }
  const Point& upper() const noexcept { return upper_; }
  std::size_t dimension() const noexcept { return lower_.dimension(); }

  bool contains(const Point& v, double tol = 1e-9) const;
  Point clamp(const Point& v) const;
  double width(std::size_t axis) const { return upper_[axis] - lower_[axis]; }

 private:
  Point lower_;
  Point upper_;
};

double p_norm(std::span<const double> v, const PNormSpec& spec);
double p_norm(const Point& v, const PNormSpec& spec);
double p_distance(const Point& a, const Point& b, const PNormSpec& spec);

/// Lower bound for the modulus of convexity of (R^dim, ||.||_p) at eps.
double modulus_lower_bound(const PNormSpec& spec, double eps);

PowerTypeConstants power_type_constants(const PNormSpec& spec);

/// dist(A, B) = inf ||a - b||_p over the two boxes.
double box_distance(const Box& a, const Box& b, const PNormSpec& spec);

}  // namespace duopoly
