#include "duopoly/models.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "duopoly/error.hpp"

namespace duopoly {

namespace {

constexpr double kSingularTol = 1e-12;

struct Solution2 {
  double u;
  double v;
};

// a11 u + a12 v = b1, a21 u + a22 v = b2
Solution2 solve2(double a11, double a12, double b1, double a21, double a22, double b2) {
  const double det = a11 * a22 - a12 * a21;
  if (std::abs(det) < kSingularTol) {
    throw Error(ErrorCode::kSingularSystem, "equilibrium system is singular");
  }
  return {(b1 * a22 - a12 * b2) / det, (a11 * b2 - a21 * b1) / det};
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

void require(bool ok, ErrorCode code, const std::string& what) {
  if (!ok) throw Error(code, what);
}

// Vertices of [0,X] x [0,Y], optionally cut by cx x + cy y <= rhs.
std::vector<State> polygon_vertices(double X, double Y, const std::optional<HalfSpace>& cut) {
  std::vector<State> corners = {{{0.0}, {0.0}}, {{X}, {0.0}}, {{X}, {Y}}, {{0.0}, {Y}}};
  if (!cut) return corners;
  std::vector<State> out;
  for (std::size_t i = 0; i < corners.size(); ++i) {
    const State& a = corners[i];
    const State& b = corners[(i + 1) % corners.size()];
    const double sa = cut->slack(a.x, a.y);
    const double sb = cut->slack(b.x, b.y);
    if (sa >= 0.0) out.push_back(a);
    if ((sa < 0.0) != (sb < 0.0)) {
      const double t = sa / (sa - sb);
      const double x = a.x[0] + t * (b.x[0] - a.x[0]);
      const double y = a.y[0] + t * (b.y[0] - a.y[0]);
      out.push_back({{x}, {y}});
    }
  }
  return out;
}

ResponseMap affine_first(const LinearDuopolyParams& p) {
  return [c = p.a - p.s, fx = p.F_x, fy = p.F_y](const Point& x, const Point& y) {
    return Point{c - fx * x[0] - fy * y[0]};
  };
}

ResponseMap affine_second(const LinearDuopolyParams& p) {
  return [c = p.a - p.r, fx = p.f_x, fy = p.f_y](const Point& x, const Point& y) {
    return Point{c - fx * x[0] - fy * y[0]};
  };
}

}  // namespace

void LinearDuopolyParams::validate() const {
  for (double v : {a, s, r, F_x, F_y, f_x, f_y}) {
    require(std::isfinite(v), ErrorCode::kInvalidParams, "linear model: parameters must be finite");
  }
  require(a > 0.0, ErrorCode::kInvalidParams, "linear model: need a > 0");
  require(s >= 0.0 && r >= 0.0, ErrorCode::kInvalidParams, "linear model: need s, r >= 0");
  require(s < a, ErrorCode::kInvalidParams, "linear model: need s < a");
  require(r < a, ErrorCode::kInvalidParams, "linear model: need r < a");
  require(F_x >= 0.0 && F_y >= 0.0 && f_x >= 0.0 && f_y >= 0.0, ErrorCode::kInvalidParams,
          "linear model: slopes must be >= 0");
  const double k = std::max(F_x + f_x, F_y + f_y);
  require(k < 1.0, ErrorCode::kInvalidParams,
          "linear model: need max(F_x + f_x, F_y + f_y) < 1, got " + fmt(k));
}

std::string_view to_string(LinearDomain domain) {
  switch (domain) {
    case LinearDomain::kZeroLevelBox: return "zero-level-box";
    case LinearDomain::kInterceptBox: return "intercept-box";
    case LinearDomain::kHalfSpace: return "half-space";
  }
  return "unknown";
}

LinearDomain parse_linear_domain(std::string_view name) {
  for (auto d : {LinearDomain::kZeroLevelBox, LinearDomain::kInterceptBox, LinearDomain::kHalfSpace}) {
    if (name == to_string(d)) return d;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown linear domain '" + std::string(name) +
                  "' (expected zero-level-box, intercept-box or half-space)");
}

ResponseModel linear_model(const LinearDuopolyParams& params, LinearDomain domain,
                           std::string id) {
  params.validate();
  const double cx = params.a - params.s;
  const double cy = params.a - params.r;
  double X = 0.0;
  double Y = 0.0;
  std::optional<HalfSpace> cut;

  switch (domain) {
    case LinearDomain::kZeroLevelBox: {
      const double det = params.F_x * params.f_y - params.F_y * params.f_x;
      require(det > kSingularTol, ErrorCode::kInfeasibleDomain,
              "zero-level box needs F_x f_y - F_y f_x > 0, got " + fmt(det));
      X = (cx * params.f_y - params.F_y * cy) / det;
      Y = (params.F_x * cy - params.f_x * cx) / det;
      require(cx <= X + 1e-9, ErrorCode::kInfeasibleDomain,
              "zero-level box needs a - s <= X (" + fmt(cx) + " > " + fmt(X) + ")");
      require(cy <= Y + 1e-9, ErrorCode::kInfeasibleDomain,
              "zero-level box needs a - r <= Y (" + fmt(cy) + " > " + fmt(Y) + ")");
      break;
    }
    case LinearDomain::kInterceptBox:
      X = cx;
      Y = cy;
      break;
    case LinearDomain::kHalfSpace:
      require(params.F_x > 0.0 && params.f_y > 0.0, ErrorCode::kInfeasibleDomain,
              "half-space domain needs F_x > 0 and f_y > 0");
      X = cx / params.F_x;
      Y = cy / params.f_y;
      cut = HalfSpace{{params.f_x}, {params.f_y}, cy, "f_x x + f_y y <= a - r"};
      break;
  }

  Domain dom(Box({0.0}, {X}), Box({0.0}, {Y}), cut);
  const auto F = affine_first(params);
  const auto f = affine_second(params);
  // Affine maps send the polygon D onto the hull of its vertex images, so
  // checking the vertices decides invariance.
  for (const State& v : polygon_vertices(X, Y, cut)) {
    const Point fx = F(v.x, v.y);
    const Point fy = f(v.x, v.y);
    if (auto why = dom.violation(fx, fy, 1e-9)) {
      throw Error(ErrorCode::kInfeasibleDomain,
                  std::string(to_string(domain)) + " domain is not invariant: vertex (" +
                      fmt(v.x[0]) + ", " + fmt(v.y[0]) + ") maps to (" + fmt(fx[0]) + ", " +
                      fmt(fy[0]) + "), " + *why);
    }
  }

  std::ostringstream desc;
  desc << "F = " << fmt(cx) << " - " << fmt(params.F_x) << " x - " << fmt(params.F_y)
       << " y, f = " << fmt(cy) << " - " << fmt(params.f_x) << " x - " << fmt(params.f_y)
       << " y on " << to_string(domain);
  ResponseModel model(std::move(id), desc.str(), F, f, std::move(dom), PNormSpec(1.0, 1),
                      TypeOneParams(params.F_x, params.F_y, params.f_x, params.f_y));
  model.set_known_equilibrium(linear_equilibrium(params));
  return model;
}

State linear_equilibrium(const LinearDuopolyParams& params) {
  params.validate();
  const auto s = solve2(1.0 + params.F_x, params.F_y, params.a - params.s, params.f_x,
                        1.0 + params.f_y, params.a - params.r);
  return {Point{s.u}, Point{s.v}};
}

void CournotLinearParams::validate() const {
  require(std::isfinite(A) && std::isfinite(b) && std::isfinite(c1) && std::isfinite(c2),
          ErrorCode::kInvalidParams, "Cournot model: parameters must be finite");
  require(b > 0.0, ErrorCode::kInvalidParams, "Cournot model: need b > 0");
  require(A > c1 && A > c2, ErrorCode::kInvalidParams, "Cournot model: need A > c1 and A > c2");
  require(c1 >= 0.0 && c2 >= 0.0, ErrorCode::kInvalidParams, "Cournot model: costs must be >= 0");
}

ResponseModel cournot_model(const CournotLinearParams& params, std::string id) {
  params.validate();
  // Profit x (A - b(x+y)) - c1 x is maximised at x = ((A - c1)/b - y) / 2.
  const double m1 = (params.A - params.c1) / params.b;
  const double m2 = (params.A - params.c2) / params.b;
  require(m1 / 2.0 <= m2 && m2 / 2.0 <= m1, ErrorCode::kInfeasibleDomain,
          "Cournot model: responses must stay inside [0, (A-c2)/b] x [0, (A-c1)/b]");
  const LinearDuopolyParams lin{m1 / 2.0 + m2 / 2.0, m2 / 2.0, m1 / 2.0, 0.0, 0.5, 0.5, 0.0};
  ResponseModel model(std::move(id),
                      "F = (" + fmt(m1) + " - y)/2, f = (" + fmt(m2) + " - x)/2 (Cournot best responses)",
                      affine_first(lin), affine_second(lin),
                      Domain(Box({0.0}, {m2}), Box({0.0}, {m1})), PNormSpec(1.0, 1),
                      TypeOneParams(0.0, 0.5, 0.5, 0.0));
  model.set_known_equilibrium(linear_equilibrium(lin));
  return model;
}

ResponseModel linear_particular_model() {
  return linear_model({100.0, 20.0, 30.0, 1.0 / 2, 1.0 / 8, 1.0 / 3, 1.0 / 6},
                      LinearDomain::kZeroLevelBox, "linear-particular");
}

ResponseModel cournot_classic_model() {
  return cournot_model({120.0, 1.0, 30.0, 20.0}, "cournot-classic");
}

ResponseModel nonlinear_sqrt_model() {
  auto F = [](const Point& x, const Point& y) {
    return Point{(90.0 - x[0] - y[0] / 8.0 - std::sqrt(y[0]) / 2.0) / 2.0};
  };
  auto f = [](const Point& x, const Point& y) {
    return Point{(100.0 - x[0] / 4.0 - y[0] - std::sqrt(x[0])) / 3.0};
  };
  // |dF/dy| <= (1/8 + 1/4)/2 and |df/dx| <= (1/4 + 1/2)/3 on [1, inf).
  return ResponseModel("nonlinear-sqrt", "square-root responses on [1, 707/16] x [1, 50]", F, f,
                       Domain(Box({1.0}, {707.0 / 16.0}), Box({1.0}, {50.0})), PNormSpec(1.0, 1),
                       TypeOneParams(1.0 / 2, 3.0 / 16, 1.0 / 4, 1.0 / 3));
}

ResponseModel share_model() {
  // First-order conditions
  //   7/8 - 9x/8 - y/2 - x^2/8 - y^2/24 = 0,  5/6 - 7y/6 - x/2 - y^2/8 - x^2/24 = 0
  // solved for the own linear term.
  auto F = [](const Point& x, const Point& y) {
    const double u = x[0], v = y[0];
    return Point{7.0 / 9 - 4.0 * v / 9 - u * u / 9 - v * v / 27};
  };
  auto f = [](const Point& x, const Point& y) {
    const double u = x[0], v = y[0];
    return Point{5.0 / 7 - 3.0 * u / 7 - u * u / 28 - 3.0 * v * v / 28};
  };
  return ResponseModel("share", "market shares on [0,1]^2 with quadratic price and costs", F, f,
                       Domain(Box({0.0}, {1.0}), Box({0.0}, {1.0})), PNormSpec(1.0, 1),
                       TypeOneParams(2.0 / 9, 14.0 / 27, 1.0 / 2, 3.0 / 14));
}

ResponseModel two_product_model(double p) {
  auto F = [](const Point& x, const Point& y) {
    const double v = (90.0 - (x[0] + x[1]) / 2.0 - (y[0] + y[1]) / 3.0) / 3.0;
    return Point{v, v};
  };
  auto f = [](const Point& x, const Point& y) {
    const double v = (100.0 - (x[0] + x[1]) / 4.0 - (y[0] + y[1]) / 3.0) / 4.0;
    return Point{v, v};
  };
  // ||(c, c)||_p = 2^{1/p} |c| and |a1 + a2| <= 2^{1-1/p} ||a||_p give these constants for every p.
  ResponseModel model("two-product", "two goods per firm, identical responses per good", F, f,
                      Domain(Box::cube(2, 0.0, 30.0), Box::cube(2, 0.0, 50.0)), PNormSpec(p, 2),
                      TypeOneParams(1.0 / 3, 2.0 / 9, 1.0 / 8, 1.0 / 6));
  const auto s = solve2(4.0, 2.0 / 3, 90.0, 0.5, 14.0 / 3, 100.0);
  model.set_known_equilibrium({Point{s.u, s.u}, Point{s.v, s.v}});
  return model;
}

double two_product_coarse_k(double p) {
  if (!(p >= 1.0)) throw Error(ErrorCode::kInvalidArgument, "two_product_coarse_k: need p >= 1");
  return 2.0 * std::pow(2.0, (p - 1.0) / p + 1.0) / 9.0;
}

ResponseModel price_quantity_model() {
  // Points are (quantity, price).
  auto F = [](const Point& X, const Point& Y) {
    return Point{(90.0 - X[0] / 2.0 - Y[0] / 3.0) / 3.0, (4.0 - X[1] / 2.0 - Y[1] / 3.0) / 3.0};
  };
  auto f = [](const Point& X, const Point& Y) {
    return Point{(100.0 - X[0] / 4.0 - Y[0] / 3.0) / 4.0, (5.0 - X[1] / 4.0 - Y[1] / 3.0) / 4.0};
  };
  // F(X,Y) - F(U,V) = -(X-U)/6 - (Y-V)/9 and likewise -(X-U)/16 - (Y-V)/12 for f.
  ResponseModel model("price-quantity", "firms choose (quantity, price) pairs", F, f,
                      Domain(Box({0.0, 0.0}, {100.0, 5.0}), Box({0.0, 0.0}, {100.0, 4.0})),
                      PNormSpec(2.0, 2), TypeOneParams(1.0 / 6, 1.0 / 9, 1.0 / 16, 1.0 / 12));
  const auto q = solve2(3.5, 1.0 / 3, 90.0, 0.25, 13.0 / 3, 100.0);
  const auto pr = solve2(3.5, 1.0 / 3, 4.0, 0.25, 13.0 / 3, 5.0);
  model.set_known_equilibrium({Point{q.u, pr.u}, Point{q.v, pr.v}});
  return model;
}

ResponseModel disjoint_two_good_model() {
  auto F = [](const Point& x, const Point& y) {
    return Point{3 * x[0] / 8 + x[1] / 8 - 3 * y[0] / 16 - y[1] / 16 + 1.0,
                 x[0] / 8 + 3 * x[1] / 8 - y[0] / 16 - 3 * y[1] / 16 + 1.0};
  };
  auto f = [](const Point& x, const Point& y) {
    const double ys = (y[0] + y[1]) / 4.0;
    return Point{-(3 * x[0] + x[1]) / 16 + ys + 1.25, -(x[0] + 3 * x[1]) / 16 + ys + 1.25};
  };
  ResponseModel model("disjoint-2d", "two goods, production sets [0,1]^2 and [2,3]^2", F, f,
                      Domain(Box::cube(2, 0.0, 1.0), Box::cube(2, 2.0, 3.0)), PNormSpec(2.0, 2),
                      TypeTwoParams(9.0 / 16, 1.0 / 4, std::sqrt(2.0)));
  model.set_known_equilibrium({Point{1.0, 1.0}, Point{2.0, 2.0}});
  return model;
}

ResponseModel disjoint_single_good_model() {
  auto F = [](const Point& x, const Point& y) { return Point{x[0] / 2 - y[0] / 4 + 1.0}; };
  auto f = [](const Point& x, const Point& y) { return Point{-x[0] / 4 + y[0] / 2 + 1.25}; };
  ResponseModel model("disjoint-1d", "one good, production sets [0,1] and [2,3]", F, f,
                      Domain(Box({0.0}, {1.0}), Box({2.0}, {3.0})), PNormSpec(1.0, 1),
                      TypeTwoParams(1.0 / 2, 1.0 / 4, 1.0));
  model.set_known_equilibrium({Point{1.0}, Point{2.0}});
  return model;
}

const std::vector<std::string>& catalog_ids() {
  static const std::vector<std::string> ids = {"linear-particular", "cournot-classic",
                                               "nonlinear-sqrt",    "share",
                                               "two-product",       "price-quantity",
                                               "disjoint-2d",       "disjoint-1d"};
  return ids;
}

ResponseModel model_by_id(std::string_view id) {
  if (id == "linear-particular") return linear_particular_model();
  if (id == "cournot-classic") return cournot_classic_model();
  if (id == "nonlinear-sqrt") return nonlinear_sqrt_model();
  if (id == "share") return share_model();
  if (id == "two-product") return two_product_model();
  if (id == "price-quantity") return price_quantity_model();
  if (id == "disjoint-2d") return disjoint_two_good_model();
  if (id == "disjoint-1d") return disjoint_single_good_model();
  std::string known;
  for (const auto& k : catalog_ids()) known += (known.empty() ? "" : ", ") + k;
  throw Error(ErrorCode::kUnknownModel,
              "unknown model '" + std::string(id) + "' (known: " + known + ")");
}

State default_start(std::string_view id) {
  if (id == "linear-particular") return {Point{40.0}, Point{60.0}};
  if (id == "cournot-classic") return {Point{100.0}, Point{20.0}};
  if (id == "nonlinear-sqrt") return {Point{10.0}, Point{50.0}};
  if (id == "share") return {Point{0.5}, Point{0.5}};
  if (id == "two-product") return {Point{10.0, 10.0}, Point{50.0, 50.0}};
  if (id == "price-quantity") return {Point{0.0, 0.0}, Point{0.0, 0.0}};
  if (id == "disjoint-2d") return {Point{0.01, 0.9}, Point{2.9, 2.1}};
  if (id == "disjoint-1d") return {Point{0.2}, Point{2.8}};
  throw Error(ErrorCode::kUnknownModel, "no default start for model '" + std::string(id) + "'");
}

}  // namespace duopoly
