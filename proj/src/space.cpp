#include "duopoly/space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "duopoly/error.hpp"

namespace duopoly {

namespace {

void require_same_dimension(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << a << " vs " << b << ")";
    throw Error(ErrorCode::kDimensionMismatch, os.str());
  }
}

}  // namespace

Point::Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "Point: dimension must be at least 1");
  }
  for (double c : coords_) {
    if (!std::isfinite(c)) {
      throw Error(ErrorCode::kInvalidArgument, "Point: coordinates must be finite");
    }
  }
}

Point Point::zeros(std::size_t dimension) { return filled(dimension, 0.0); }

Point Point::filled(std::size_t dimension, double value) {
  return Point(std::vector<double>(dimension, value));
}

std::string Point::to_string(int precision) const {
  std::ostringstream os;
  os.precision(precision);
  if (coords_.size() == 1) {
    os << coords_[0];
    return os.str();
  }
  os << '(';
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i > 0) os << ", ";
    os << coords_[i];
  }
  os << ')';
  return os.str();
}

Point operator-(const Point& a, const Point& b) {
  require_same_dimension(a.dimension(), b.dimension(), "Point subtraction");
  std::vector<double> out(a.dimension());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] - b[i];
  return Point(std::move(out));
}

Point operator+(const Point& a, const Point& b) {
  require_same_dimension(a.dimension(), b.dimension(), "Point addition");
  std::vector<double> out(a.dimension());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + b[i];
  return Point(std::move(out));
}

Point operator*(double s, const Point& a) {
  std::vector<double> out(a.dimension());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = s * a[i];
  return Point(std::move(out));
}

PNormSpec::PNormSpec(double p_, std::size_t dimension_) : p(p_), dimension(dimension_) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw Error(ErrorCode::kInvalidArgument, "PNormSpec: p must be a finite real >= 1");
  }
  if (dimension == 0) {
    throw Error(ErrorCode::kInvalidArgument, "PNormSpec: dimension must be positive");
  }
}

Box::Box(Point lower, Point upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
  require_same_dimension(lower_.dimension(), upper_.dimension(), "Box");
  for (std::size_t i = 0; i < lower_.dimension(); ++i) {
    if (lower_[i] > upper_[i]) {
      throw Error(ErrorCode::kInvalidArgument, "Box: lower must not exceed upper");
    }
  }
}

Box Box::cube(std::size_t dimension, double lo, double hi) {
  return Box(Point::filled(dimension, lo), Point::filled(dimension, hi));
}

bool Box::contains(const Point& v, double tol) const {
  require_same_dimension(dimension(), v.dimension(), "Box::contains");
  for (std::size_t i = 0; i < v.dimension(); ++i) {
    if (v[i] < lower_[i] - tol || v[i] > upper_[i] + tol) return false;
  }
  return true;
}

Point Box::clamp(const Point& v) const {
  require_same_dimension(dimension(), v.dimension(), "Box::clamp");
  std::vector<double> out(v.dimension());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::clamp(v[i], lower_[i], upper_[i]);
  return Point(std::move(out));
}

double p_norm(std::span<const double> v, const PNormSpec& spec) {
  require_same_dimension(v.size(), spec.dimension, "p_norm");
  if (v.size() == 1) return std::abs(v[0]);
  if (spec.p == 1.0) {
    double s = 0.0;
    for (double c : v) s += std::abs(c);
    return s;
  }
  if (spec.p == 2.0) {
    double s = 0.0;
    for (double c : v) s += c * c;
    return std::sqrt(s);
  }
  // Scale by the largest magnitude so |v_i|^p cannot overflow.
  double scale = 0.0;
  for (double c : v) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (double c : v) s += std::pow(std::abs(c) / scale, spec.p);
  return scale * std::pow(s, 1.0 / spec.p);
}

double p_norm(const Point& v, const PNormSpec& spec) { return p_norm(v.coords(), spec); }

double p_distance(const Point& a, const Point& b, const PNormSpec& spec) {
  require_same_dimension(a.dimension(), b.dimension(), "p_distance");
  require_same_dimension(a.dimension(), spec.dimension, "p_distance");
  if (a.dimension() == 1) return std::abs(a[0] - b[0]);
  std::vector<double> diff(a.dimension());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = a[i] - b[i];
  return p_norm(diff, spec);
}

double modulus_lower_bound(const PNormSpec& spec, double eps) {
  if (!(eps > 0.0 && eps <= 2.0)) {
    throw Error(ErrorCode::kInvalidArgument, "modulus_lower_bound: eps must lie in (0, 2]");
  }
  const PowerTypeConstants pt = power_type_constants(spec);
  return pt.C * std::pow(eps, pt.q);
}

PowerTypeConstants power_type_constants(const PNormSpec& spec) {
  if (spec.dimension == 1) return {0.5, 1.0};
  const double p = spec.p;
  if (p >= 2.0) return {1.0 / (p * std::pow(2.0, p)), p};
  if (p > 1.0) return {(p - 1.0) / 8.0, 2.0};
  throw Error(ErrorCode::kInvalidArgument,
              "power_type_constants: l_1 in dimension >= 2 is not uniformly convex");
}

double box_distance(const Box& a, const Box& b, const PNormSpec& spec) {
  require_same_dimension(a.dimension(), b.dimension(), "box_distance");
  std::vector<double> gap(a.dimension());
  for (std::size_t i = 0; i < gap.size(); ++i) {
    gap[i] = std::max({0.0, a.lower()[i] - b.upper()[i], b.lower()[i] - a.upper()[i]});
  }
  return p_norm(gap, spec);
}

}  // namespace duopoly
