#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <vector>

#include "duopoly/cli/config.hpp"
#include "duopoly/cli/format.hpp"

namespace duopoly::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitMaxIter = 2;
inline constexpr int kExitDomainExit = 3;

int exit_code_for(TraceStatus status);

/// Smallest n whose a priori bound is <= eps, from the first step out of start.
std::int64_t a_priori_count(const ResponseModel& model, const State& start, double eps,
                            std::optional<double> k_override = std::nullopt);

struct CountRow {
  double eps;
  std::int64_t a_priori;
  /// nullopt when max_iter is reached first.
  std::optional<std::size_t> a_posteriori;
};

std::vector<CountRow> iteration_counts(const ResponseModel& model, const State& start,
                                       const std::vector<double>& eps,
                                       std::optional<double> k_override = std::nullopt,
                                       std::size_t max_iter = 1'000'000);

/// Trace table for solve; columns n, x, y, s_n, bounds (and gap for best proximity).
Table trace_table(const ResponseModel& model, const IterationTrace& trace, OutputFormat format);

int cmd_solve(const Scenario& scenario, std::ostream& out, std::ostream& err);
int cmd_bounds(const Scenario& scenario, std::ostream& out, std::ostream& err);
int cmd_verify(const Scenario& scenario, std::ostream& out, std::ostream& err);
int cmd_equilibrium(const Scenario& scenario, std::ostream& out, std::ostream& err);
int cmd_paper_tables(const std::filesystem::path& out_dir, std::optional<double> k_override,
                     OutputFormat format, std::ostream& out, std::ostream& err);

/// Runs body, printing Error and std::exception messages to err with exit code 1.
int guarded(const std::function<int()>& body, std::ostream& err);

/// Tables 1 to 20 of the reference study, recomputed.
std::vector<int> reference_table_numbers();
Table reference_table(int number, std::optional<double> k_override, OutputFormat format);

}  // namespace duopoly::cli
