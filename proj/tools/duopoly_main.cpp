#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "duopoly/cli/commands.hpp"
#include "duopoly/error.hpp"

namespace {

using namespace duopoly;
using namespace duopoly::cli;

struct Flags {
  std::string config;
  std::optional<std::string> model;
  std::optional<std::string> start;
  std::optional<std::string> eps;
  std::optional<std::size_t> max_iter;
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<double> k_override;
  std::optional<std::string> format;
  std::optional<std::string> criterion;
  std::optional<double> tol;
  std::optional<std::size_t> fixed;
  std::optional<unsigned> threads;
  std::optional<std::size_t> grid;
  std::optional<double> p;
  bool clamp = false;
  std::string out = "tables";
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "scenario file (key = value)");
  cmd->add_option("--model", f.model, "catalog model id");
  cmd->add_option("--start", f.start, "start point: x coordinates then y coordinates, comma separated");
  cmd->add_option("--format", f.format, "output format: csv or table");
}

void add_run(CLI::App* cmd, Flags& f) {
  cmd->add_option("--max-iter", f.max_iter, "iteration cap");
  cmd->add_option("--k-override", f.k_override, "replace the type-one factor k in the bounds");
  cmd->add_option("--p", f.p, "p-norm exponent (two-product only)");
}

Scenario build_scenario(const Flags& f) {
  Scenario sc = f.config.empty() ? Scenario{} : load_scenario(f.config);
  if (f.model) sc.model_id = *f.model;
  if (f.p) sc.norm_p = *f.p;
  if (f.start) sc.start = parse_number_list(*f.start, "--start");
  if (f.eps) sc.eps = parse_number_list(*f.eps, "--eps");
  if (f.criterion) {
    if (*f.criterion == "a-posteriori") {
      sc.rule.criterion = Criterion::kAPosterioriBound;
    } else if (*f.criterion == "residual") {
      sc.rule.criterion = Criterion::kResidual;
    } else {
      throw Error(ErrorCode::kInvalidArgument,
                  "--criterion: expected a-posteriori or residual, got '" + *f.criterion + "'");
    }
  }
  if (f.tol) sc.rule.tolerance = *f.tol;
  if (f.max_iter) sc.rule.max_iter = *f.max_iter;
  if (f.fixed) {
    sc.rule.criterion = Criterion::kFixedCount;
    sc.rule.fixed_count = *f.fixed;
  }
  if (f.k_override) sc.k_override = *f.k_override;
  if (f.clamp) sc.clamp = true;
  if (f.samples) sc.samples = *f.samples;
  if (f.seed) sc.seed = *f.seed;
  if (f.threads) sc.threads = *f.threads;
  if (f.grid) sc.grid = *f.grid;
  if (f.format) sc.format = parse_format(*f.format);
  sc.rule.validate();
  return sc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coupled best-response iteration for duopoly models"};
  app.require_subcommand(1);
  Flags f;

  auto* solve = app.add_subcommand("solve", "iterate a model and print the trace");
  add_common(solve, f);
  add_run(solve, f);
  solve->add_option("--criterion", f.criterion, "stopping rule: a-posteriori or residual");
  solve->add_option("--tol", f.tol, "stopping tolerance");
  solve->add_option("--fixed", f.fixed, "run exactly N iterations");
  solve->add_flag("--clamp", f.clamp, "project iterates leaving D back onto the boxes");

  auto* bounds = app.add_subcommand("bounds", "iteration counts needed by the a priori and a posteriori bounds");
  add_common(bounds, f);
  add_run(bounds, f);
  bounds->add_option("--eps", f.eps, "comma separated tolerances");

  auto* verify = app.add_subcommand("verify", "sampled check of the declared constants and of D invariance");
  add_common(verify, f);
  verify->add_option("--samples", f.samples, "number of samples");
  verify->add_option("--seed", f.seed, "random seed");
  verify->add_option("--threads", f.threads, "worker threads (0 = hardware)");
  verify->add_option("--p", f.p, "p-norm exponent (two-product only)");

  auto* eq = app.add_subcommand("equilibrium", "closed-form, iterated and grid-search equilibria");
  add_common(eq, f);
  eq->add_option("--max-iter", f.max_iter, "iteration cap");
  eq->add_option("--grid", f.grid, "grid points per axis for the search");
  eq->add_option("--threads", f.threads, "worker threads (0 = hardware)");
  eq->add_option("--p", f.p, "p-norm exponent (two-product only)");

  auto* tables = app.add_subcommand("paper-tables", "write table01.csv .. table20.csv");
  tables->add_option("--out", f.out, "output directory");
  tables->add_option("--k-override", f.k_override, "k for the two-product count tables");
  tables->add_option("--format", f.format, "csv lists the files; table also prints them aligned");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  return guarded(
      [&]() -> int {
        if (tables->parsed()) {
          const OutputFormat fmt = f.format ? parse_format(*f.format) : OutputFormat::kCsv;
          return cmd_paper_tables(f.out, f.k_override, fmt, std::cout, std::cerr);
        }
        const Scenario sc = build_scenario(f);
        if (solve->parsed()) return cmd_solve(sc, std::cout, std::cerr);
        if (bounds->parsed()) return cmd_bounds(sc, std::cout, std::cerr);
        if (verify->parsed()) return cmd_verify(sc, std::cout, std::cerr);
        return cmd_equilibrium(sc, std::cout, std::cerr);
      },
      std::cerr);
}
