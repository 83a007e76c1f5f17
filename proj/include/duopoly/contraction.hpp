#pragma once

// Contraction constants for response-map pairs and the closed-form error
// bounds they certify.
//
// Type one (fixed-point setting):
//   rho(F(x,y),F(u,v)) + rho(f(z,w),f(t,s))
//       <= alpha rho(x,u) + beta rho(y,v) + gamma rho(z,t) + delta rho(w,s)
// with k = max(alpha + gamma, beta + delta) < 1.
//
// Type two (best-proximity setting, d = dist(A_x, A_y)):
//   ||F(x,y) - f(u,v)|| <= alpha ||x - v|| + beta ||y - u|| + (1 - alpha - beta) d
// with alpha + beta < 1.

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace duopoly {

class TypeOneParams {
 public:
  TypeOneParams(double alpha, double beta, double gamma, double delta);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double gamma() const noexcept { return gamma_; }
  double delta() const noexcept { return delta_; }

  TypeOneParams scaled(double factor) const;

 private:
  double alpha_, beta_, gamma_, delta_;
};

class TypeTwoParams {
 public:
  TypeTwoParams(double alpha, double beta, double d);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double d() const noexcept { return d_; }
  double sum() const noexcept { return alpha_ + beta_; }

  /// Scales alpha and beta; d is a property of the sets and stays fixed.
  TypeTwoParams scaled(double factor) const;

 private:
  double alpha_, beta_, d_;
};

enum class BoundKind { kAPrioriFixed, kAPosterioriFixed, kAPrioriProx, kAPosterioriProx };

std::string_view to_string(BoundKind kind);

/// A bound value together with every input that produced it.
struct BoundReport {
  BoundKind kind;
  double value;
  std::vector<std::pair<std::string, double>> inputs;
};

/// k = max(alpha + gamma, beta + delta).
double contraction_factor(const TypeOneParams& params);

/// k^n / (1 - k) * d0 with d0 = rho(x_1, x_0) + rho(y_1, y_0).
double a_priori_fixed(double k, double d0, std::int64_t n);

/// k / (1 - k) * s_n with s_n = rho(x_{n-1}, x_n) + rho(y_{n-1}, y_n).
double a_posteriori_fixed(double k, double s_n);

/// One-step contraction of the summed error: k * prev_err.
double rate_bound(double k, double prev_err);

/// Smallest n >= 0 with a_priori_fixed(k, d0, n) <= eps.
std::int64_t iterations_for_a_priori(double k, double d0, double eps);

/// M0 (W / (C d))^{1/q} (alpha+beta)^{m/q} / (1 - (alpha+beta)^{1/q}).
double a_priori_prox(const TypeTwoParams& params, double C, double q, double M0, double W,
                     std::int64_t m);

/// M_prev (W_prev / (C d))^{1/q} c with c = (alpha+beta)^{1/q} / (1 - (alpha+beta)^{1/q}).
double a_posteriori_prox(const TypeTwoParams& params, double C, double q, double M_prev,
                         double W_prev);

/// Smallest m >= 0 with a_priori_prox(params, C, q, M0, W, m) <= eps.
std::int64_t iterations_for_a_priori_prox(const TypeTwoParams& params, double C, double q,
                                          double M0, double W, double eps);

BoundReport a_priori_fixed_report(double k, double d0, std::int64_t n);
BoundReport a_posteriori_fixed_report(double k, double s_n);
BoundReport a_priori_prox_report(const TypeTwoParams& params, double C, double q, double M0,
                                 double W, std::int64_t m);
BoundReport a_posteriori_prox_report(const TypeTwoParams& params, double C, double q,
                                     double M_prev, double W_prev);

}  // namespace duopoly
