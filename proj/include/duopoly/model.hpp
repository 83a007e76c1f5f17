#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "duopoly/contraction.hpp"
#include "duopoly/space.hpp"

namespace duopoly {

/// Linear coupling constraint  x_coeffs . x + y_coeffs . y <= rhs.
struct HalfSpace {
  std::vector<double> x_coeffs;
  std::vector<double> y_coeffs;
  double rhs;
  std::string label;

  double slack(const Point& x, const Point& y) const;
};

/// D = (A_x x A_y) intersected with an optional coupling half-space.
class Domain {
 public:
  Domain(Box x_set, Box y_set, std::optional<HalfSpace> coupling = std::nullopt);

  const Box& x_set() const noexcept { return x_set_; }
  const Box& y_set() const noexcept { return y_set_; }
  const std::optional<HalfSpace>& coupling() const noexcept { return coupling_; }

  bool contains(const Point& x, const Point& y, double tol = 1e-9) const;

  /// Human-readable name of the first violated constraint, if any.
  std::optional<std::string> violation(const Point& x, const Point& y, double tol = 1e-9) const;

 private:
  Box x_set_;
  Box y_set_;
  std::optional<HalfSpace> coupling_;
};

enum class ModelKind { kFixedPoint, kBestProximity };

std::string_view to_string(ModelKind kind);

using ResponseMap = std::function<Point(const Point& x, const Point& y)>;
using ContractionParams = std::variant<TypeOneParams, TypeTwoParams>;

struct State {
  Point x;
  Point y;
};

/// A pair of response maps (F for firm one, f for firm two) on a domain D,
/// with the metric and the contraction constants declared for the pair.
class ResponseModel {
 public:
  ResponseModel(std::string id, std::string description, ResponseMap first, ResponseMap second,
                Domain domain, PNormSpec metric, ContractionParams contraction);

  const std::string& id() const noexcept { return id_; }
  const std::string& description() const noexcept { return description_; }
  const Domain& domain() const noexcept { return domain_; }
  const PNormSpec& metric() const noexcept { return metric_; }
  const ContractionParams& contraction() const noexcept { return contraction_; }
  std::size_t dimension() const noexcept { return metric_.dimension; }

  ModelKind kind() const noexcept;

  /// dist(A_x, A_y) in the model metric.
  double set_distance() const;

  Point first(const Point& x, const Point& y) const { return first_(x, y); }
  Point second(const Point& x, const Point& y) const { return second_(x, y); }
  State step(const State& s) const { return {first_(s.x, s.y), second_(s.x, s.y)}; }

  double distance(const Point& a, const Point& b) const { return p_distance(a, b, metric_); }

  /// Same maps and domain with other declared constants.
  ResponseModel with_contraction(ContractionParams contraction) const;
  ResponseModel with_domain(Domain domain) const;

  /// Closed-form equilibrium, when the catalog knows one.
  const std::optional<State>& known_equilibrium() const noexcept { return equilibrium_; }
  ResponseModel& set_known_equilibrium(State s);

 private:
  std::string id_;
  std::string description_;
  ResponseMap first_;
  ResponseMap second_;
  Domain domain_;
  PNormSpec metric_;
  ContractionParams contraction_;
  std::optional<State> equilibrium_;
};

}  // namespace duopoly
