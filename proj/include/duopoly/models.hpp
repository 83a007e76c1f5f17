#pragma once

// Built-in duopoly models and the constructors they are assembled from.

#include <string>
#include <string_view>
#include <vector>

#include "duopoly/model.hpp"

namespace duopoly {

/// Affine responses F(x,y) = a - s - F_x x - F_y y and f(x,y) = a - r - f_x x - f_y y.
/// Slopes are given explicitly per map and per argument.
struct LinearDuopolyParams {
  double a;
  double s;
  double r;
  double F_x;
  double F_y;
  double f_x;
  double f_y;

  void validate() const;
};

/// How D is built for a linear model.
enum class LinearDomain {
  /// [0, X] x [0, Y] where (X, Y) is the common zero of F and f.
  kZeroLevelBox,
  /// [0, a-s] x [0, a-r].
  kInterceptBox,
  /// [0, (a-s)/F_x] x [0, (a-r)/f_y] cut by f_x x + f_y y <= a - r.
  kHalfSpace,
};

std::string_view to_string(LinearDomain domain);
LinearDomain parse_linear_domain(std::string_view name);

/// Throws Error(kInfeasibleDomain) naming the failed condition when D is not
/// mapped into itself.
ResponseModel linear_model(const LinearDuopolyParams& params, LinearDomain domain,
                           std::string id = "linear");

/// Solves (1 + F_x) x + F_y y = a - s, f_x x + (1 + f_y) y = a - r.
State linear_equilibrium(const LinearDuopolyParams& params);

/// Inverse demand P = A - b (x + y) with constant marginal costs c1, c2.
struct CournotLinearParams {
  double A;
  double b;
  double c1;
  double c2;

  void validate() const;
};

/// Best responses from the first-order conditions of the linear Cournot game.
ResponseModel cournot_model(const CournotLinearParams& params, std::string id = "cournot");

ResponseModel linear_particular_model();
ResponseModel cournot_classic_model();
ResponseModel nonlinear_sqrt_model();
ResponseModel share_model();
ResponseModel two_product_model(double p = 2.0);
ResponseModel price_quantity_model();
ResponseModel disjoint_two_good_model();
ResponseModel disjoint_single_good_model();

const std::vector<std::string>& catalog_ids();

/// Throws Error(kUnknownModel) for ids outside the catalog.
ResponseModel model_by_id(std::string_view id);

/// Start point used for the model's reference runs.
State default_start(std::string_view id);

/// beta + delta of the coarser two-product constants 2^{(p-1)/p} / 3,
/// 2^{(p-1)/p+1} / 9, 2^{(p-1)/p} / 6, 2^{(p-1)/p+1} / 9. Used with --k-override.
double two_product_coarse_k(double p = 2.0);

}  // namespace duopoly
