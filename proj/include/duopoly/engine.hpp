#pragma once

// Coupled iteration x_{n+1} = F(x_n, y_n), y_{n+1} = f(x_n, y_n) with per-step
// error bounds and stopping rules.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "duopoly/model.hpp"

namespace duopoly {

enum class Criterion { kAPosterioriBound, kResidual, kFixedCount };

struct StoppingRule {
  double tolerance = 1e-6;
  std::size_t max_iter = 1'000'000;
  Criterion criterion = Criterion::kAPosterioriBound;
  std::size_t fixed_count = 0;

  static StoppingRule a_posteriori(double tolerance, std::size_t max_iter = 1'000'000);
  static StoppingRule residual(double tolerance, std::size_t max_iter = 1'000'000);
  static StoppingRule fixed(std::size_t count);

  void validate() const;
};

struct IterateOptions {
  /// Keep every state; when false only the last two states are retained.
  bool keep_history = true;
  /// Project iterates that leave D back onto the boxes instead of stopping.
  /// Traces produced this way are flagged and carry no error-bound guarantees.
  bool clamp_to_domain = false;
  /// Replaces max(alpha+gamma, beta+delta) in the type-one bounds.
  std::optional<double> k_override;
};

enum class TraceStatus { kConverged, kCompleted, kMaxIterExceeded, kDomainExit };

std::string_view to_string(TraceStatus status);

struct DomainExitInfo {
  std::size_t index;
  State state;
  std::string violated;
};

struct IterationTrace {
  /// States x_n, y_n for n = first_index .. iterations.
  std::vector<State> points;
  /// s_n = rho(x_{n-1}, x_n) + rho(y_{n-1}, y_n), aligned with points[1..].
  std::vector<double> step_sums;
  /// rho(x_n, y_n) - d, aligned with points (best-proximity models only).
  std::vector<double> pair_gaps;
  /// Error bounds at each n >= 1, aligned with step_sums.
  std::vector<double> a_priori;
  std::vector<double> a_posteriori;

  TraceStatus status = TraceStatus::kMaxIterExceeded;
  std::size_t iterations = 0;
  std::size_t first_index = 0;
  /// k for type-one models (possibly overridden), alpha+beta for type two.
  double factor = 0.0;
  bool k_overridden = false;
  bool clamped = false;
  std::optional<DomainExitInfo> exit;

  const State& final_state() const { return points.back(); }
  double final_a_posteriori() const;
};

/// Runs the coupled iteration from init until the rule stops it.
/// Throws Error(kInitOutsideDomain) when init is not in D.
IterationTrace iterate(const ResponseModel& model, const State& init, const StoppingRule& rule,
                       const IterateOptions& options = {});

/// rho(x, F(x,y)) + rho(y, f(x,y)); zero exactly at a coupled fixed point.
double residual(const ResponseModel& model, const Point& x, const Point& y);

/// (rho(y, F(x,y)) - d, rho(x, f(x,y)) - d) for best-proximity models.
std::pair<double, double> proximity_gap(const ResponseModel& model, const Point& x,
                                        const Point& y);

/// First n at which the a posteriori bound is <= eps, with its trace.
/// n is nullopt when the iteration cap is hit first.
std::pair<std::optional<std::size_t>, IterationTrace> run_to_tolerance(
    const ResponseModel& model, const State& init, double eps,
    std::size_t max_iter = 1'000'000, const IterateOptions& options = {});

}  // namespace duopoly
