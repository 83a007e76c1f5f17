#pragma once

// Sampled certification of contraction inequalities and domain invariance,
// and a grid-search oracle for equilibria. Sampling results are empirical
// evidence only; they do not prove the inequalities.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "duopoly/engine.hpp"
#include "duopoly/model.hpp"

namespace duopoly {

struct CertReport {
  std::string check;
  std::string model_id;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::size_t violations = 0;
  double tolerance = 1e-9;
  /// min over samples of RHS - LHS (or signed distance to D for invariance).
  double worst_slack = 0.0;
  std::size_t worst_index = 0;
  /// Coordinates of the worst sample, points concatenated in check order.
  std::vector<double> worst_witness;
  /// Largest observed ratio comparable with k (type one) or alpha+beta (type two).
  std::optional<double> empirical_k;
  /// Declared value empirical_k is compared with.
  std::optional<double> declared_k;

  bool passed() const noexcept { return violations == 0; }
};

struct SamplingOptions {
  double tolerance = 1e-9;
  /// 0 picks std::thread::hardware_concurrency(). Results do not depend on it.
  unsigned threads = 1;
};

/// Uniform sample of D number `index` for stream `stream`; deterministic in all
/// arguments. Points violating a coupling constraint are redrawn.
State sample_domain(const Domain& domain, std::uint64_t seed, std::uint64_t index,
                    std::uint64_t stream = 0);

/// Type-one inequality on quadruples of points of D.
CertReport check_type_one(const ResponseModel& model, std::size_t n_samples, std::uint64_t seed,
                          const SamplingOptions& options = {});

/// Type-two inequality on pairs of points of D.
CertReport check_type_two(const ResponseModel& model, std::size_t n_samples, std::uint64_t seed,
                          const SamplingOptions& options = {});

/// (F(x,y), f(x,y)) in D for sampled (x,y) in D.
CertReport check_domain_invariance(const ResponseModel& model, std::size_t n_samples,
                                   std::uint64_t seed, const SamplingOptions& options = {});

/// Structured text rendering, one `key: value` per line.
std::string format_report(const CertReport& report);

struct OracleOptions {
  /// Window shrink rounds after the initial grid; at least 3 are always run.
  std::size_t min_rounds = 3;
  std::size_t max_rounds = 12;
  /// Refinement stops once the grid pitch is at or below this.
  double target_pitch = 1e-7;
  std::size_t max_grid = 100'000'000;
  unsigned threads = 0;
};

struct OracleResult {
  State point;
  /// Residual (fixed point) or |gap1| + |gap2| (best proximity) at point.
  double objective = 0.0;
  /// Largest grid spacing of the last round.
  double pitch = 0.0;
  std::size_t rounds = 0;
};

/// Exhaustive grid search over D followed by windowed refinement.
/// Throws Error(kGridTooLarge) when points_per_axis^dims exceeds max_grid.
OracleResult brute_force_equilibrium(const ResponseModel& model, std::size_t points_per_axis,
                                     const OracleOptions& options = {});

/// gap_n <= (alpha + beta) gap_{n-1} + tol along the trace.
bool lemma_decay_check(const IterationTrace& trace, const TypeTwoParams& params,
                       double tol = 1e-9);

}  // namespace duopoly
