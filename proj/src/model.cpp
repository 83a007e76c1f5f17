#include "duopoly/model.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "duopoly/error.hpp"

namespace duopoly {

double HalfSpace::slack(const Point& x, const Point& y) const {
  if (x.dimension() != x_coeffs.size() || y.dimension() != y_coeffs.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "HalfSpace: coefficient dimension mismatch");
  }
  double lhs = 0.0;
  for (std::size_t i = 0; i < x_coeffs.size(); ++i) lhs += x_coeffs[i] * x[i];
  for (std::size_t i = 0; i < y_coeffs.size(); ++i) lhs += y_coeffs[i] * y[i];
  return rhs - lhs;
}

Domain::Domain(Box x_set, Box y_set, std::optional<HalfSpace> coupling)
    : x_set_(std::move(x_set)), y_set_(std::move(y_set)), coupling_(std::move(coupling)) {
  if (coupling_ && (coupling_->x_coeffs.size() != x_set_.dimension() ||
                    coupling_->y_coeffs.size() != y_set_.dimension())) {
    throw Error(ErrorCode::kDimensionMismatch, "Domain: coupling constraint dimension mismatch");
  }
}

bool Domain::contains(const Point& x, const Point& y, double tol) const {
  return !violation(x, y, tol).has_value();
}

std::optional<std::string> Domain::violation(const Point& x, const Point& y, double tol) const {
  if (!x_set_.contains(x, tol)) return "x outside A_x";
  if (!y_set_.contains(y, tol)) return "y outside A_y";
  if (coupling_ && coupling_->slack(x, y) < -tol) {
    return "coupling constraint violated: " + coupling_->label;
  }
  return std::nullopt;
}

std::string_view to_string(ModelKind kind) {
  return kind == ModelKind::kFixedPoint ? "fixed-point" : "best-proximity";
}

ResponseModel::ResponseModel(std::string id, std::string description, ResponseMap first,
                             ResponseMap second, Domain domain, PNormSpec metric,
                             ContractionParams contraction)
    : id_(std::move(id)),
      description_(std::move(description)),
      first_(std::move(first)),
      second_(std::move(second)),
      domain_(std::move(domain)),
      metric_(metric),
      contraction_(std::move(contraction)) {
  if (domain_.x_set().dimension() != metric_.dimension ||
      domain_.y_set().dimension() != metric_.dimension) {
    throw Error(ErrorCode::kDimensionMismatch,
                "ResponseModel '" + id_ + "': production sets must match the metric dimension");
  }
  if (const auto* two = std::get_if<TypeTwoParams>(&contraction_)) {
    const double d = set_distance();
    if (!(d > 0.0)) {
      throw Error(ErrorCode::kInvalidParams, "ResponseModel '" + id_ +
                                                 "': best-proximity models need disjoint "
                                                 "production sets (dist(A_x, A_y) > 0)");
    }
    if (std::abs(two->d() - d) > 1e-9) {
      std::ostringstream os;
      os << "ResponseModel '" << id_ << "': declared d = " << two->d()
         << " differs from dist(A_x, A_y) = " << d;
      throw Error(ErrorCode::kInvalidParams, os.str());
    }
  }
}

ModelKind ResponseModel::kind() const noexcept {
  return std::holds_alternative<TypeTwoParams>(contraction_) ? ModelKind::kBestProximity
                                                             : ModelKind::kFixedPoint;
}

double ResponseModel::set_distance() const {
  return box_distance(domain_.x_set(), domain_.y_set(), metric_);
}

ResponseModel ResponseModel::with_contraction(ContractionParams contraction) const {
  ResponseModel copy(id_, description_, first_, second_, domain_, metric_, std::move(contraction));
  copy.equilibrium_ = equilibrium_;
  return copy;
}

ResponseModel ResponseModel::with_domain(Domain domain) const {
  ResponseModel copy(id_, description_, first_, second_, std::move(domain), metric_, contraction_);
  copy.equilibrium_ = equilibrium_;
  return copy;
}

ResponseModel& ResponseModel::set_known_equilibrium(State s) {
  equilibrium_ = std::move(s);
  return *this;
}

}  // namespace duopoly
