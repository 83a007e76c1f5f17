#include "duopoly/contraction.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "duopoly/error.hpp"

namespace duopoly {

namespace {

constexpr double kStrictTol = 1e-12;

void require_nonnegative(double v, const char* name) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << "contraction constant " << name << " must be a finite nonnegative real, got " << v;
    throw Error(ErrorCode::kInvalidParams, os.str());
  }
}

void require_factor(double k, const char* where) {
  if (!(k >= 0.0 && k < 1.0)) {
    std::ostringstream os;
    os << where << ": contraction factor must lie in [0, 1), got " << k;
    throw Error(ErrorCode::kInvalidArgument, os.str());
  }
}

void require_nonnegative_input(double v, const char* where, const char* name) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << where << ": " << name << " must be a finite nonnegative real";
    throw Error(ErrorCode::kInvalidArgument, os.str());
  }
}

// Smallest n >= 0 with bound(n) <= eps where bound(n) = A r^n is nonincreasing.
std::int64_t invert_geometric(double A, double r, double eps,
                              const std::function<double(std::int64_t)>& bound) {
  if (!(eps > 0.0)) throw Error(ErrorCode::kInvalidArgument, "tolerance must be positive");
  if (bound(0) <= eps) return 0;
  if (r <= 0.0) return 1;
  const double guess = std::ceil(std::log(eps / A) / std::log(r));
  auto n = static_cast<std::int64_t>(std::max(0.0, guess));
  while (bound(n) > eps) ++n;
  while (n > 0 && bound(n - 1) <= eps) --n;
  return n;
}

// (alpha+beta)^{1/q} and the common prefactor (W / (C d))^{1/q}.
struct ProxTerms {
  double root;
  double scale;
};

ProxTerms prox_terms(const TypeTwoParams& params, double C, double q, double W,
                     const char* where) {
  if (!(params.d() > 0.0)) {
    std::ostringstream os;
    os << where << ": set distance d must be positive (intersecting sets have no "
       << "best-proximity bound)";
    throw Error(ErrorCode::kInvalidArgument, os.str());
  }
  if (!(C > 0.0) || !(q >= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(where) + ": power-type constants need C > 0 and q >= 1");
  }
  require_nonnegative_input(W, where, "W");
  return {std::pow(params.sum(), 1.0 / q), std::pow(W / (C * params.d()), 1.0 / q)};
}

}  // namespace

TypeOneParams::TypeOneParams(double alpha, double beta, double gamma, double delta)
    : alpha_(alpha), beta_(beta), gamma_(gamma), delta_(delta) {
  require_nonnegative(alpha, "alpha");
  require_nonnegative(beta, "beta");
  require_nonnegative(gamma, "gamma");
  require_nonnegative(delta, "delta");
  const double k = std::max(alpha + gamma, beta + delta);
  if (!(k < 1.0 - kStrictTol)) {
    std::ostringstream os;
    os << "type-one constants need max(alpha+gamma, beta+delta) < 1, got " << k;
    throw Error(ErrorCode::kInvalidParams, os.str());
  }
}

TypeOneParams TypeOneParams::scaled(double factor) const {
  return {alpha_ * factor, beta_ * factor, gamma_ * factor, delta_ * factor};
}

TypeTwoParams::TypeTwoParams(double alpha, double beta, double d)
    : alpha_(alpha), beta_(beta), d_(d) {
  require_nonnegative(alpha, "alpha");
  require_nonnegative(beta, "beta");
  require_nonnegative(d, "d");
  if (!(alpha + beta < 1.0 - kStrictTol)) {
    std::ostringstream os;
    os << "type-two constants need alpha+beta < 1, got " << alpha + beta;
    throw Error(ErrorCode::kInvalidParams, os.str());
  }
}

TypeTwoParams TypeTwoParams::scaled(double factor) const {
  return {alpha_ * factor, beta_ * factor, d_};
}

std::string_view to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::kAPrioriFixed: return "a-priori-fixed";
    case BoundKind::kAPosterioriFixed: return "a-posteriori-fixed";
    case BoundKind::kAPrioriProx: return "a-priori-prox";
    case BoundKind::kAPosterioriProx: return "a-posteriori-prox";
  }
  return "unknown";
}

double contraction_factor(const TypeOneParams& params) {
  return std::max(params.alpha() + params.gamma(), params.beta() + params.delta());
}

double a_priori_fixed(double k, double d0, std::int64_t n) {
  require_factor(k, "a_priori_fixed");
  require_nonnegative_input(d0, "a_priori_fixed", "d0");
  if (n < 0) throw Error(ErrorCode::kInvalidArgument, "a_priori_fixed: n must be >= 0");
  return std::pow(k, static_cast<double>(n)) / (1.0 - k) * d0;
}

double a_posteriori_fixed(double k, double s_n) {
  require_factor(k, "a_posteriori_fixed");
  require_nonnegative_input(s_n, "a_posteriori_fixed", "s_n");
  return k / (1.0 - k) * s_n;
}

double rate_bound(double k, double prev_err) {
  require_factor(k, "rate_bound");
  require_nonnegative_input(prev_err, "rate_bound", "prev_err");
  return k * prev_err;
}

std::int64_t iterations_for_a_priori(double k, double d0, double eps) {
  require_factor(k, "iterations_for_a_priori");
  require_nonnegative_input(d0, "iterations_for_a_priori", "d0");
  if (d0 == 0.0) return 0;
  return invert_geometric(d0 / (1.0 - k), k, eps,
                          [&](std::int64_t n) { return a_priori_fixed(k, d0, n); });
}

double a_priori_prox(const TypeTwoParams& params, double C, double q, double M0, double W,
                     std::int64_t m) {
  const ProxTerms t = prox_terms(params, C, q, W, "a_priori_prox");
  require_nonnegative_input(M0, "a_priori_prox", "M0");
  if (m < 0) throw Error(ErrorCode::kInvalidArgument, "a_priori_prox: m must be >= 0");
  return M0 * t.scale * std::pow(t.root, static_cast<double>(m)) / (1.0 - t.root);
}

double a_posteriori_prox(const TypeTwoParams& params, double C, double q, double M_prev,
                         double W_prev) {
  const ProxTerms t = prox_terms(params, C, q, W_prev, "a_posteriori_prox");
  require_nonnegative_input(M_prev, "a_posteriori_prox", "M_prev");
  return M_prev * t.scale * t.root / (1.0 - t.root);
}

std::int64_t iterations_for_a_priori_prox(const TypeTwoParams& params, double C, double q,
                                          double M0, double W, double eps) {
  const ProxTerms t = prox_terms(params, C, q, W, "iterations_for_a_priori_prox");
  const double A = M0 * t.scale / (1.0 - t.root);
  if (A == 0.0) return 0;
  return invert_geometric(A, t.root, eps, [&](std::int64_t m) {
    return a_priori_prox(params, C, q, M0, W, m);
  });
}

BoundReport a_priori_fixed_report(double k, double d0, std::int64_t n) {
  return {BoundKind::kAPrioriFixed,
          a_priori_fixed(k, d0, n),
          {{"k", k}, {"d0", d0}, {"n", static_cast<double>(n)}}};
}

BoundReport a_posteriori_fixed_report(double k, double s_n) {
  return {BoundKind::kAPosterioriFixed, a_posteriori_fixed(k, s_n), {{"k", k}, {"s_n", s_n}}};
}

BoundReport a_priori_prox_report(const TypeTwoParams& params, double C, double q, double M0,
                                 double W, std::int64_t m) {
  return {BoundKind::kAPrioriProx,
          a_priori_prox(params, C, q, M0, W, m),
          {{"alpha", params.alpha()},
           {"beta", params.beta()},
           {"d", params.d()},
           {"C", C},
           {"q", q},
           {"M0", M0},
           {"W", W},
           {"m", static_cast<double>(m)}}};
}

BoundReport a_posteriori_prox_report(const TypeTwoParams& params, double C, double q,
                                     double M_prev, double W_prev) {
  return {BoundKind::kAPosterioriProx,
          a_posteriori_prox(params, C, q, M_prev, W_prev),
          {{"alpha", params.alpha()},
           {"beta", params.beta()},
           {"d", params.d()},
           {"C", C},
           {"q", q},
           {"M_prev", M_prev},
           {"W_prev", W_prev}}};
}

}  // namespace duopoly
