// Acceptance suite: one PASS/FAIL line per criterion. With an argument N only
// criterion N runs. Exit status is the number of failed criteria.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "duopoly/cli/commands.hpp"
#include "duopoly/error.hpp"
#include "duopoly/models.hpp"
#include "duopoly/verify.hpp"

using namespace duopoly;
using namespace duopoly::cli;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[miss] " << what << "; ";
    }
  }
};

State st(double x, double y) { return {Point{x}, Point{y}}; }

IterationTrace run_fixed(const ResponseModel& m, const State& s, std::size_t n) {
  return iterate(m, s, StoppingRule::fixed(n));
}

// Printed values in the reference tables are truncated toward zero.
double truncate_to(double v, int decimals) {
  const double s = std::pow(10.0, decimals);
  return std::trunc(v * s + 1e-9) / s;
}

bool printed_match(double value, double printed, int decimals) {
  return std::abs(truncate_to(value, decimals) - printed) < 0.5 * std::pow(10.0, -decimals);
}

double max_coord_diff(const State& a, const State& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.x.dimension(); ++i) {
    d = std::max({d, std::abs(a.x[i] - b.x[i]), std::abs(a.y[i] - b.y[i])});
  }
  return d;
}

std::vector<int> a_priori_row(const ResponseModel& m, const State& s, std::optional<double> k = {}) {
  std::vector<int> v;
  for (double e : {0.1, 0.01, 0.001, 0.0001, 0.00001}) v.push_back(static_cast<int>(a_priori_count(m, s, e, k)));
  return v;
}

std::vector<int> a_posteriori_row(const ResponseModel& m, const State& s, std::optional<double> k = {}) {
  IterateOptions o;
  o.k_override = k;
  o.keep_history = false;
  std::vector<int> v;
  for (double e : {0.1, 0.01, 0.001, 0.0001, 0.00001}) {
    const auto n = run_to_tolerance(m, s, e, 1'000'000, o).first;
    v.push_back(n ? static_cast<int>(*n) : -1);
  }
  return v;
}

std::string row_text(const std::vector<int>& v) {
  std::string s;
  for (int x : v) s += (s.empty() ? "" : "/") + std::to_string(x);
  return s;
}

bool within_one(const std::vector<int>& got, const std::vector<int>& want) {
  for (std::size_t i = 0; i < want.size(); ++i) {
    if (std::abs(got[i] - want[i]) > 1) return false;
  }
  return true;
}

// Equilibrium of a type-one model, or a long run for best-proximity models.
State reference_equilibrium(const ResponseModel& m) {
  if (m.known_equilibrium()) return *m.known_equilibrium();
  IterateOptions o;
  o.keep_history = false;
  return iterate(m, default_start(m.id()), StoppingRule::residual(1e-14, 100'000), o).final_state();
}

void criterion1(Outcome& o) {
  const auto t = run_fixed(linear_particular_model(), st(40, 60), 30);
  const double x20 = t.points[20].x[0], y20 = t.points[20].y[0];
  o.require(std::abs(x20 - 49.51205) <= 5e-6, "x_20 within 5e-6 of 49.51205");
  o.require(std::abs(y20 - 45.85354) <= 5e-6,
            "y_20 within 5e-6 of 45.85354 (exact y_20 = 45.8535461; the printed value is a truncation)");
  o.require(std::abs(t.points[2].x[0] - 47.92) <= 5e-3, "x_2 within 5e-3 of 47.92");
  o.require(std::abs(t.points[2].y[0] - 44.72) <= 5e-3, "y_2 within 5e-3 of 44.72");
  struct Col { std::size_t n; double x, y; int dec; };
  const Col cols[] = {{0, 40, 60, 0},          {1, 52.5, 46.6, 1},        {2, 47.92, 44.72, 2},
                      {5, 49.85, 46.11, 2},     {10, 49.49, 45.83, 2},     {20, 49.51205, 45.85354, 5},
                      {30, 49.51219, 45.85366, 5}};
  bool truncated_ok = true;
  for (const auto& c : cols) {
    const bool xr = std::abs(t.points[c.n].x[0] - c.x) <= 0.5 * std::pow(10.0, -c.dec) + 1e-12 ||
                    printed_match(t.points[c.n].x[0], c.x, c.dec);
    const bool yr = std::abs(t.points[c.n].y[0] - c.y) <= 0.5 * std::pow(10.0, -c.dec) + 1e-12 ||
                    printed_match(t.points[c.n].y[0], c.y, c.dec);
    truncated_ok = truncated_ok && xr && yr;
  }
  o.require(truncated_ok, "every printed column of table 1 (rounded or truncated)");
  char buf[160];
  std::snprintf(buf, sizeof buf, "x_20=%.7f y_20=%.7f x_2=%.4f y_2=%.4f", x20, y20, t.points[2].x[0],
                t.points[2].y[0]);
  o.detail << buf;
}

void criterion2(Outcome& o) {
  const auto m = cournot_classic_model();
  const auto a = run_fixed(m, st(40, 60), 2);
  const auto b = run_fixed(m, st(100, 20), 2);
  o.require(std::abs(a.points[2].x[0] - 30.0) <= 1e-9 && std::abs(a.points[2].y[0] - 42.5) <= 1e-9,
            "table 4 n=2 (30.0, 42.5)");
  o.require(std::abs(b.points[1].x[0] - 35.0) <= 1e-9 && std::abs(b.points[1].y[0]) <= 1e-9,
            "table 5 n=1 (35, 0)");
  o.detail << "table4 n=2 (" << a.points[2].x[0] << ", " << a.points[2].y[0] << "), table5 n=1 ("
           << b.points[1].x[0] << ", " << b.points[1].y[0] << ")";
}

void criterion3(Outcome& o) {
  const auto lin = linear_particular_model();
  const auto cournot = cournot_classic_model();
  const auto sq = nonlinear_sqrt_model();
  const auto two = two_product_model();
  const auto prox = disjoint_single_good_model();
  const State two_start{Point{10.0, 10.0}, Point{50.0, 50.0}};
  const double kc = two_product_coarse_k();

  const auto t2 = a_priori_row(lin, st(40, 60));
  const auto t6 = a_priori_row(cournot, st(100, 20));
  const auto t3 = a_posteriori_row(lin, st(40, 60));
  const auto t7 = a_posteriori_row(cournot, st(100, 20));
  const auto t10 = a_posteriori_row(sq, st(10, 50));
  const auto t20 = a_posteriori_row(prox, st(0.2, 2.8));
  const auto t15 = a_priori_row(two, two_start, kc);
  const auto t16 = a_posteriori_row(two, two_start, kc);
  const auto t15d = a_priori_row(two, two_start);
  const auto t16d = a_posteriori_row(two, two_start);

  o.require(t2 == std::vector<int>{41, 53, 66, 79, 91}, "table 2 exact");
  o.require(t6 == std::vector<int>{11, 15, 18, 21, 25}, "table 6 exact");
  o.require(within_one(t3, {14, 18, 23, 27, 32}), "table 3 within 1");
  o.require(within_one(t7, {11, 15, 18, 21, 25}), "table 7 within 1");
  o.require(within_one(t10, {12, 16, 20, 24, 28}), "table 10 within 1");
  o.require(within_one(t20, {17, 25, 33, 41, 49}), "table 20 within 1");
  o.require(t15 == std::vector<int>{16, 21, 26, 31, 36}, "table 15 exact with k override");
  o.require(t16 == std::vector<int>{9, 12, 15, 18, 20}, "table 16 exact with k override");
  o.require(t15d != t15 && t16d != t16, "tables 15/16 differ under the default k");
  o.detail << "T2 " << row_text(t2) << ", T3 " << row_text(t3) << ", T6 " << row_text(t6) << ", T7 "
           << row_text(t7) << ", T10 " << row_text(t10) << ", T20 " << row_text(t20) << ", T15 "
           << row_text(t15) << " (default " << row_text(t15d) << "), T16 " << row_text(t16)
           << " (default " << row_text(t16d) << ")";
}

void criterion4(Outcome& o) {
  const auto sq = run_fixed(nonlinear_sqrt_model(), st(10, 50), 60).final_state();
  o.require(std::abs(sq.x[0] - 28.3075) <= 1e-4 && std::abs(sq.y[0] - 21.9007) <= 1e-4,
            "nonlinear-sqrt limit");
  o.detail << "sqrt (" << sq.x[0] << ", " << sq.y[0] << ")";
  const auto share = share_model();
  for (const State& s : {st(0.5, 0.5), st(0.1, 0.9), st(1.0, 0.0)}) {
    const auto e = run_fixed(share, s, 60).final_state();
    o.require(std::abs(e.x[0] - 0.537) <= 1e-3 && std::abs(e.y[0] - 0.451) <= 1e-3,
              "share limit from (" + format_sig(s.x[0]) + "," + format_sig(s.y[0]) + ")");
    o.detail << ", share from (" << s.x[0] << "," << s.y[0] << ") -> (" << e.x[0] << ", " << e.y[0] << ")";
  }
}

void criterion5(Outcome& o) {
  const auto one = disjoint_single_good_model();
  const auto t = run_fixed(one, st(0.2, 2.8), 200);
  const auto& e1 = t.final_state();
  o.require(std::abs(e1.x[0] - 1) <= 1e-6 && std::abs(e1.y[0] - 2) <= 1e-6, "disjoint-1d limit (1,2)");
  o.require(std::abs(one.distance(e1.x, e1.y) - 1.0) <= 1e-6, "disjoint-1d pair distance d = 1");
  struct Col { std::size_t n; double x, y; int dx, dy; };
  const Col cols[] = {{1, 0.4, 2.6, 1, 1},     {2, 0.55, 2.45, 2, 2},    {5, 0.81, 2.18, 2, 2},
                      {10, 0.95, 2.04, 2, 2},   {20, 0.997, 2.002, 3, 3}, {30, 0.9998, 2.0001, 4, 4}};
  for (const auto& c : cols) {
    o.require(printed_match(t.points[c.n].x[0], c.x, c.dx) && printed_match(t.points[c.n].y[0], c.y, c.dy),
              "table 18 column n=" + std::to_string(c.n));
  }
  const auto two = disjoint_two_good_model();
  const auto e2 = run_fixed(two, {Point{0.01, 0.9}, Point{2.9, 2.1}}, 300).final_state();
  const State target{Point{1.0, 1.0}, Point{2.0, 2.0}};
  o.require(max_coord_diff(e2, target) <= 1e-6, "disjoint-2d limit ((1,1),(2,2))");
  o.require(std::abs(two.distance(e2.x, e2.y) - std::sqrt(2.0)) <= 1e-6, "disjoint-2d gap sqrt(2)");
  const auto t19 = a_priori_row(one, st(0.2, 2.8));
  o.require(t19 == std::vector<int>{21, 29, 37, 45, 53}, "table 19 exact");
  o.detail << "1d -> (" << e1.x[0] << ", " << e1.y[0] << "), 2d max deviation "
           << format_sig(max_coord_diff(e2, target), 3) << ", T19 " << row_text(t19);
}

void criterion6(Outcome& o) {
  const auto m = price_quantity_model();
  const auto e = run_fixed(m, default_start(m.id()), 100).final_state();
  const auto& exact = *m.known_equilibrium();
  o.require(max_coord_diff(e, exact) <= 1e-6, "iteration reaches the 2x2 linear solve");
  o.require(std::abs(e.x[0] - 23.646) < 5e-4 && std::abs(e.x[1] - 1.039) < 5e-4 &&
                std::abs(e.y[1] - 1.094) < 5e-4,
            "quantities/prices 23.646, 1.039, 1.094");
  // The stated 21.72 disagrees with the exact 21.7127 of the same linear solve.
  o.require(std::abs(e.y[0] - 21.7127) < 5e-5, "y quantity 21.7127 (exact solve)");
  o.require(printed_match(e.x[0], 23.64, 2) && printed_match(e.x[1], 1.03, 2) &&
                printed_match(e.y[0], 21.71, 2) && printed_match(e.y[1], 1.09, 2),
            "two-decimal reference values");
  char buf[128];
  std::snprintf(buf, sizeof buf, "x=(%.6f, %.6f) y=(%.6f, %.6f)", e.x[0], e.x[1], e.y[0], e.y[1]);
  o.detail << buf;
}

void criterion7(Outcome& o) {
  std::size_t runs = 0, checks = 0;
  double worst = INFINITY;
  for (const auto& id : catalog_ids()) {
    const auto m = model_by_id(id);
    if (m.kind() != ModelKind::kFixedPoint) continue;
    const State eq = reference_equilibrium(m);
    const double k = contraction_factor(std::get<TypeOneParams>(m.contraction()));
    auto err = [&](const State& s) { return m.distance(s.x, eq.x) + m.distance(s.y, eq.y); };
    for (std::uint64_t i = 0; i < 25; ++i) {
      const State start = sample_domain(m.domain(), 2024, i);
      const auto t = run_fixed(m, start, 80);
      ++runs;
      for (std::size_t n = 1; n < t.points.size(); ++n) {
        const double e = err(t.points[n]);
        const double slack = std::min({t.a_priori[n - 1] - e, t.a_posteriori[n - 1] - e,
                                       k * err(t.points[n - 1]) - e});
        worst = std::min(worst, slack);
        ++checks;
        if (slack < -1e-7) {
          o.require(false, id + " start " + std::to_string(i) + " step " + std::to_string(n));
        }
      }
    }
  }
  o.detail << runs << " runs, " << checks << " steps, worst slack " << format_sig(worst, 3);
}

void criterion8(Outcome& o) {
  SamplingOptions so;
  so.threads = 0;
  for (const auto& id : catalog_ids()) {
    const auto m = model_by_id(id);
    const bool one = m.kind() == ModelKind::kFixedPoint;
    const auto shrunk = one ? m.with_contraction(std::get<TypeOneParams>(m.contraction()).scaled(0.8))
                            : m.with_contraction(std::get<TypeTwoParams>(m.contraction()).scaled(0.8));
    std::size_t control = 0;
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const auto c = one ? check_type_one(m, 100'000, seed, so) : check_type_two(m, 100'000, seed, so);
      const auto inv = check_domain_invariance(m, 100'000, seed, so);
      o.require(c.passed(), id + " " + c.check + " seed " + std::to_string(seed) + ": " +
                                std::to_string(c.violations) + " violations");
      o.require(inv.passed(), id + " invariance seed " + std::to_string(seed));
      const auto s = one ? check_type_one(shrunk, 100'000, seed, so) : check_type_two(shrunk, 100'000, seed, so);
      control += s.violations;
      o.require(s.violations > 0, id + " shrunk constants seed " + std::to_string(seed) + " not caught");
    }
    o.detail << id << ":" << control << " ";
  }
  o.detail << "(violations caught with constants x0.8)";
}

void criterion9(Outcome& o) {
  for (const auto& id : catalog_ids()) {
    const auto m = model_by_id(id);
    const State it = run_fixed(m, default_start(id), 400).final_state();
    const std::size_t grid = m.dimension() == 1 ? 201 : 41;
    OracleOptions oo;
    oo.threads = 0;
    const auto orc = brute_force_equilibrium(m, grid, oo);
    const double diff = max_coord_diff(it, orc.point);
    o.require(diff <= 1e-5, id + " oracle differs by " + format_sig(diff, 3));
    o.detail << id << ":" << format_sig(diff, 2) << " ";
  }
}

void criterion10(Outcome& o) {
  const auto one = disjoint_single_good_model();
  const auto two = disjoint_two_good_model();
  const auto t1 = run_fixed(one, st(0.2, 2.8), 60);
  const auto t2 = run_fixed(two, {Point{0.01, 0.9}, Point{2.9, 2.1}}, 60);
  o.require(lemma_decay_check(t1, std::get<TypeTwoParams>(one.contraction()), 1e-9), "disjoint-1d");
  o.require(lemma_decay_check(t2, std::get<TypeTwoParams>(two.contraction()), 1e-9), "disjoint-2d");
  o.detail << "60 steps each; gap_60 = " << format_sig(t1.pair_gaps.back(), 3) << " / "
           << format_sig(t2.pair_gaps.back(), 3);
}

struct AcceptanceItem {
  int number;
  const char* title;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<AcceptanceItem> all = {
      {1, "linear trace reproduces table 1", criterion1},
      {2, "cournot traces (tables 4, 5)", criterion2},
      {3, "iteration-count tables", criterion3},
      {4, "nonlinear model limits", criterion4},
      {5, "best-proximity limits, table 18, table 19", criterion5},
      {6, "price-quantity equilibrium", criterion6},
      {7, "bound soundness on random starts", criterion7},
      {8, "sampled certification and falsification control", criterion8},
      {9, "grid oracle agrees with iteration", criterion9},
      {10, "pair-gap decay on best-proximity models", criterion10},
  };
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  int failed = 0;
  for (const auto& c : all) {
    if (only != 0 && c.number != only) continue;
    Outcome o;
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    std::printf("%s criterion %d: %s | %s\n", o.pass ? "PASS" : "FAIL", c.number, c.title,
                o.detail.str().c_str());
    if (!o.pass) ++failed;
  }
  return failed;
}
