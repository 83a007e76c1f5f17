#include "duopoly/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "duopoly/error.hpp"
#include "duopoly/verify.hpp"

namespace duopoly::cli {

namespace {

void add_point(std::vector<std::string>& row, const Point& p, OutputFormat format, int decimals) {
  for (double v : p.values()) {
    row.push_back(format == OutputFormat::kCsv ? format_sig(v) : format_fixed(v, decimals));
  }
}

void add_point_header(std::vector<std::string>& header, const char* name, std::size_t dim) {
  if (dim == 1) {
    header.emplace_back(name);
    return;
  }
  for (std::size_t i = 1; i <= dim; ++i) header.push_back(std::string(name) + std::to_string(i));
}

std::string describe(const State& s) {
  return "(" + s.x.to_string() + ", " + s.y.to_string() + ")";
}

std::string criterion_name(const StoppingRule& rule) {
  switch (rule.criterion) {
    case Criterion::kAPosterioriBound: return "a-posteriori <= " + format_sig(rule.tolerance);
    case Criterion::kResidual: return "residual <= " + format_sig(rule.tolerance);
    case Criterion::kFixedCount: return "fixed " + std::to_string(rule.fixed_count) + " iterations";
  }
  return "unknown";
}

void warn_override(const ResponseModel& model, std::optional<double> k, std::ostream& err) {
  if (!k) return;
  if (model.kind() == ModelKind::kBestProximity) {
    throw Error(ErrorCode::kInvalidArgument, "--k-override applies to type-one models only");
  }
  err << "warning: k overridden to " << format_sig(*k) << " (declared k = "
      << format_sig(contraction_factor(std::get<TypeOneParams>(model.contraction())))
      << "); bounds no longer follow from the declared constants\n";
}

void emit(const Table& t, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::kCsv) {
    write_csv(t, out);
  } else {
    write_aligned(t, out);
  }
}

}  // namespace

int exit_code_for(TraceStatus status) {
  switch (status) {
    case TraceStatus::kConverged:
    case TraceStatus::kCompleted: return kExitOk;
    case TraceStatus::kMaxIterExceeded: return kExitMaxIter;
    case TraceStatus::kDomainExit: return kExitDomainExit;
  }
  return kExitUsage;
}

std::int64_t a_priori_count(const ResponseModel& model, const State& start, double eps,
                            std::optional<double> k_override) {
  if (!model.domain().contains(start.x, start.y)) {
    throw Error(ErrorCode::kInitOutsideDomain, "start " + describe(start) + " is outside D");
  }
  const State first = model.step(start);
  if (const auto* one = std::get_if<TypeOneParams>(&model.contraction())) {
    const double k = k_override ? *k_override : contraction_factor(*one);
    const double d0 = model.distance(first.x, start.x) + model.distance(first.y, start.y);
    return iterations_for_a_priori(k, d0, eps);
  }
  const auto& two = std::get<TypeTwoParams>(model.contraction());
  const auto pt = power_type_constants(model.metric());
  const double same = model.distance(start.x, start.y);
  const double mx = std::max(same, model.distance(start.x, first.y));
  const double my = std::max(same, model.distance(start.y, first.x));
  const double d = two.d();
  return std::max(iterations_for_a_priori_prox(two, pt.C, pt.q, mx, std::max(0.0, mx - d), eps),
                  iterations_for_a_priori_prox(two, pt.C, pt.q, my, std::max(0.0, my - d), eps));
}

std::vector<CountRow> iteration_counts(const ResponseModel& model, const State& start,
                                       const std::vector<double>& eps,
                                       std::optional<double> k_override, std::size_t max_iter) {
  IterateOptions opts;
  opts.k_override = k_override;
  opts.keep_history = false;
  std::vector<CountRow> rows;
  for (double e : eps) {
    if (!(e > 0.0)) throw Error(ErrorCode::kInvalidArgument, "eps values must be > 0");
    CountRow row{e, a_priori_count(model, start, e, k_override), std::nullopt};
    row.a_posteriori = run_to_tolerance(model, start, e, max_iter, opts).first;
    rows.push_back(row);
  }
  return rows;
}

Table trace_table(const ResponseModel& model, const IterationTrace& trace, OutputFormat format) {
  const bool proximity = model.kind() == ModelKind::kBestProximity;
  Table t;
  t.header.emplace_back("n");
  add_point_header(t.header, "x", model.dimension());
  add_point_header(t.header, "y", model.dimension());
  t.header.insert(t.header.end(), {"s_n", "a_priori", "a_posteriori"});
  if (proximity) t.header.emplace_back("gap");

  const std::size_t offset = trace.points.size() - 1 - trace.a_posteriori.size();
  for (std::size_t i = 0; i < trace.points.size(); ++i) {
    std::vector<std::string> row{format_count(trace.first_index + i)};
    add_point(row, trace.points[i].x, format, 5);
    add_point(row, trace.points[i].y, format, 5);
    if (i < 1 + offset || trace.first_index + i == 0) {
      row.insert(row.end(), {"", "", ""});
    } else {
      const std::size_t j = i - 1 - offset;
      row.push_back(format_sig(trace.step_sums[j]));
      row.push_back(format_sig(trace.a_priori[j]));
      row.push_back(format_sig(trace.a_posteriori[j]));
    }
    if (proximity) row.push_back(format_sig(trace.pair_gaps[i]));
    t.rows.push_back(std::move(row));
  }
  return t;
}

int cmd_solve(const Scenario& sc, std::ostream& out, std::ostream& err) {
  const ResponseModel model = sc.build_model();
  const State start = sc.resolve_start(model);
  warn_override(model, sc.k_override, err);
  IterateOptions opts;
  opts.k_override = sc.k_override;
  opts.clamp_to_domain = sc.clamp;
  StoppingRule rule = sc.rule;
  if (rule.criterion == Criterion::kFixedCount) rule.max_iter = std::max<std::size_t>(rule.fixed_count, 1);
  const IterationTrace trace = iterate(model, start, rule, opts);

  Table t = trace_table(model, trace, sc.format);
  t.comments.push_back("model: " + model.id() + " (" + std::string(to_string(model.kind())) + ")");
  t.comments.push_back("start: " + describe(start));
  t.comments.push_back("criterion: " + criterion_name(rule) + ", max_iter " +
                       std::to_string(rule.max_iter));
  t.comments.push_back(std::string(model.kind() == ModelKind::kFixedPoint ? "k: " : "alpha+beta: ") +
                       format_sig(trace.factor) + (trace.k_overridden ? " (override)" : ""));
  t.comments.push_back("status: " + std::string(to_string(trace.status)) + " after " +
                       std::to_string(trace.iterations) + " iterations");
  if (trace.clamped) t.comments.push_back("clamped: iterates were projected onto D; bounds are not certified");
  if (trace.exit) {
    t.comments.push_back("domain exit at n=" + std::to_string(trace.exit->index) + ": " +
                         describe(trace.exit->state) + " " + trace.exit->violated);
    err << "domain exit at n=" << trace.exit->index << ": " << trace.exit->violated << "\n";
  }
  emit(t, sc.format, out);
  return exit_code_for(trace.status);
}

int cmd_bounds(const Scenario& sc, std::ostream& out, std::ostream& err) {
  const ResponseModel model = sc.build_model();
  const State start = sc.resolve_start(model);
  warn_override(model, sc.k_override, err);
  const auto rows = iteration_counts(model, start, sc.eps, sc.k_override, sc.rule.max_iter);
  Table t;
  t.comments.push_back("model: " + model.id());
  t.comments.push_back("start: " + describe(start));
  if (sc.k_override) t.comments.push_back("k: " + format_sig(*sc.k_override) + " (override)");
  t.header = {"eps", "a_priori_n", "a_posteriori_n"};
  bool missing = false;
  for (const auto& r : rows) {
    t.rows.push_back({format_sig(r.eps), std::to_string(r.a_priori),
                      r.a_posteriori ? std::to_string(*r.a_posteriori) : std::string()});
    missing = missing || !r.a_posteriori;
  }
  if (missing) t.comments.push_back("empty a_posteriori_n: max_iter reached first");
  emit(t, sc.format, out);
  return missing ? kExitMaxIter : kExitOk;
}

int cmd_verify(const Scenario& sc, std::ostream& out, std::ostream&) {
  const ResponseModel model = sc.build_model();
  SamplingOptions opts;
  opts.threads = sc.threads;
  std::vector<CertReport> reports;
  if (model.kind() == ModelKind::kFixedPoint) {
    reports.push_back(check_type_one(model, sc.samples, sc.seed, opts));
  } else {
    reports.push_back(check_type_two(model, sc.samples, sc.seed, opts));
  }
  reports.push_back(check_domain_invariance(model, sc.samples, sc.seed, opts));

  bool ok = true;
  for (const auto& r : reports) ok = ok && r.passed();
  if (sc.format == OutputFormat::kTable) {
    for (std::size_t i = 0; i < reports.size(); ++i) out << (i ? "\n" : "") << format_report(reports[i]);
  } else {
    Table t;
    t.comments.push_back("sampled certification: empirical, not a proof");
    t.header = {"check", "model", "seed", "samples", "violations", "worst_slack", "empirical_k",
                "declared_k", "status"};
    for (const auto& r : reports) {
      t.rows.push_back({r.check, r.model_id, std::to_string(r.seed), std::to_string(r.samples),
                        std::to_string(r.violations), format_sig(r.worst_slack),
                        r.empirical_k ? format_sig(*r.empirical_k) : "",
                        r.declared_k ? format_sig(*r.declared_k) : "",
                        r.passed() ? "PASS" : "FAIL"});
    }
    write_csv(t, out);
  }
  return ok ? kExitOk : kExitUsage;
}

int cmd_equilibrium(const Scenario& sc, std::ostream& out, std::ostream&) {
  const ResponseModel model = sc.build_model();
  const State start = sc.resolve_start(model);
  const bool proximity = model.kind() == ModelKind::kBestProximity;
  auto objective = [&](const State& s) {
    if (proximity) {
      const auto g = proximity_gap(model, s.x, s.y);
      return std::abs(g.first) + std::abs(g.second);
    }
    return residual(model, s.x, s.y);
  };

  Table t;
  t.comments.push_back("model: " + model.id());
  t.comments.push_back(std::string("objective: ") +
                       (proximity ? "|rho(y,F) - d| + |rho(x,f) - d|" : "rho(x,F) + rho(y,f)"));
  t.header = {"method"};
  add_point_header(t.header, "x", model.dimension());
  add_point_header(t.header, "y", model.dimension());
  t.header.insert(t.header.end(), {"objective", "detail"});
  auto row = [&](const std::string& method, const State& s, const std::string& detail) {
    std::vector<std::string> r{method};
    add_point(r, s.x, sc.format, 6);
    add_point(r, s.y, sc.format, 6);
    r.push_back(format_sig(objective(s)));
    r.push_back(detail);
    t.rows.push_back(std::move(r));
  };

  if (const auto& eq = model.known_equilibrium()) row("closed-form", *eq, "");

  IterateOptions opts;
  opts.keep_history = false;
  // For q = 2 the proximity bound scales with sqrt(W); rounding in W floors it near 1e-6.
  const double tol = proximity ? 1e-5 : 1e-10;
  const IterationTrace trace =
      iterate(model, start, StoppingRule::a_posteriori(tol, sc.rule.max_iter), opts);
  row("iteration", trace.final_state(),
      std::string(to_string(trace.status)) + " n=" + std::to_string(trace.iterations) +
          " bound " + format_sig(trace.final_a_posteriori(), 3));

  const std::size_t dims = 2 * model.dimension();
  const std::size_t grid = sc.grid != 0 ? sc.grid : (dims <= 2 ? 201 : 41);
  OracleOptions oo;
  oo.threads = sc.threads;
  const OracleResult oracle = brute_force_equilibrium(model, grid, oo);
  row("oracle", oracle.point,
      "grid " + std::to_string(grid) + " pitch " + format_sig(oracle.pitch, 3) + " rounds " +
          std::to_string(oracle.rounds));
  emit(t, sc.format, out);
  return trace.status == TraceStatus::kConverged ? kExitOk : exit_code_for(trace.status);
}

int cmd_paper_tables(const std::filesystem::path& dir, std::optional<double> k_override,
                     OutputFormat format, std::ostream& out, std::ostream& err) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir.string() + ": " + ec.message());
  if (k_override) {
    err << "warning: k override " << format_sig(*k_override)
        << " applies to the two-product count tables (15, 16)\n";
  }
  for (int n : reference_table_numbers()) {
    const Table csv = reference_table(n, k_override, OutputFormat::kCsv);
    char name[32];
    std::snprintf(name, sizeof name, "table%02d.csv", n);
    const auto path = dir / name;
    std::ofstream f(path);
    if (!f) throw Error(ErrorCode::kIo, "cannot write " + path.string());
    write_csv(csv, f);
    f.close();
    if (!f) throw Error(ErrorCode::kIo, "error writing " + path.string());
    if (format == OutputFormat::kTable) {
      out << "== " << name << " ==\n";
      write_aligned(reference_table(n, k_override, OutputFormat::kTable), out);
      out << "\n";
    } else {
      out << path.string() << "\n";
    }
  }
  return kExitOk;
}

int guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitUsage;
}

}  // namespace duopoly::cli
