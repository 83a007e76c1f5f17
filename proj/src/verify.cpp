#include "duopoly/verify.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <thread>

#include "duopoly/error.hpp"

namespace duopoly {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniform [0,1) from a counter tuple.
double uniform(std::uint64_t seed, std::uint64_t index, std::uint64_t stream,
               std::uint64_t coord) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ index);
  h = splitmix64(h ^ (stream * 0x632be59bd9b4e019ULL));
  h = splitmix64(h ^ coord);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

Point sample_box(const Box& box, std::uint64_t seed, std::uint64_t index, std::uint64_t stream,
                 std::uint64_t offset) {
  std::vector<double> c(box.dimension());
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = box.lower()[i] + box.width(i) * uniform(seed, index, stream, offset + i);
  }
  return Point(std::move(c));
}

unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

struct Partial {
  std::size_t violations = 0;
  double worst = std::numeric_limits<double>::infinity();
  std::size_t worst_index = 0;
  double ratio = 0.0;
};

// One sample: returns slack and optionally a ratio comparable with k.
using SampleFn = std::function<std::pair<double, double>(std::size_t)>;

Partial run_samples(std::size_t n, unsigned threads, double tol, const SampleFn& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  std::vector<Partial> parts(threads);
  auto work = [&](unsigned t) {
    const std::size_t begin = n * t / threads;
    const std::size_t end = n * (t + 1) / threads;
    Partial& p = parts[t];
    for (std::size_t i = begin; i < end; ++i) {
      const auto [slack, ratio] = fn(i);
      if (slack < -tol) ++p.violations;
      if (slack < p.worst) {
        p.worst = slack;
        p.worst_index = i;
      }
      p.ratio = std::max(p.ratio, ratio);
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  // Chunks are index-ordered, so a strict comparison keeps the lowest index on ties.
  Partial total;
  for (const Partial& p : parts) {
    total.violations += p.violations;
    if (p.worst < total.worst) {
      total.worst = p.worst;
      total.worst_index = p.worst_index;
    }
    total.ratio = std::max(total.ratio, p.ratio);
  }
  return total;
}

void append(std::vector<double>& out, const Point& p) {
  out.insert(out.end(), p.values().begin(), p.values().end());
}

CertReport base_report(const char* check, const ResponseModel& model, std::size_t n,
                       std::uint64_t seed, double tol) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "sample count must be >= 1");
  CertReport r;
  r.check = check;
  r.model_id = model.id();
  r.seed = seed;
  r.samples = n;
  r.tolerance = tol;
  return r;
}

// Signed distance of (x, y) to D: negative when outside.
double domain_margin(const Domain& d, const Point& x, const Point& y) {
  double m = std::numeric_limits<double>::infinity();
  auto box_margin = [&m](const Box& b, const Point& p) {
    for (std::size_t i = 0; i < p.dimension(); ++i) {
      m = std::min({m, p[i] - b.lower()[i], b.upper()[i] - p[i]});
    }
  };
  box_margin(d.x_set(), x);
  box_margin(d.y_set(), y);
  if (d.coupling()) m = std::min(m, d.coupling()->slack(x, y));
  return m;
}

}  // namespace

State sample_domain(const Domain& domain, std::uint64_t seed, std::uint64_t index,
                    std::uint64_t stream) {
  const std::size_t dx = domain.x_set().dimension();
  const std::size_t width = dx + domain.y_set().dimension();
  for (std::uint64_t attempt = 0; attempt < 10'000; ++attempt) {
    const std::uint64_t offset = attempt * width;
    State s{sample_box(domain.x_set(), seed, index, stream, offset),
            sample_box(domain.y_set(), seed, index, stream, offset + dx)};
    if (!domain.coupling() || domain.coupling()->slack(s.x, s.y) >= 0.0) return s;
  }
  throw Error(ErrorCode::kInfeasibleDomain, "sample_domain: coupling constraint rejects the box");
}

CertReport check_type_one(const ResponseModel& model, std::size_t n_samples, std::uint64_t seed,
                          const SamplingOptions& options) {
  const auto* params = std::get_if<TypeOneParams>(&model.contraction());
  if (!params) {
    throw Error(ErrorCode::kWrongModelKind,
                "check_type_one: model '" + model.id() + "' declares type-two constants");
  }
  CertReport report = base_report("type-one", model, n_samples, seed, options.tolerance);
  const TypeOneParams c = *params;
  const Domain& dom = model.domain();

  auto draw = [&](std::size_t i) {
    return std::array<State, 4>{sample_domain(dom, seed, i, 0), sample_domain(dom, seed, i, 1),
                                sample_domain(dom, seed, i, 2), sample_domain(dom, seed, i, 3)};
  };
  const Partial total =
      run_samples(n_samples, resolve_threads(options.threads), options.tolerance, [&](std::size_t i) {
        const auto q = draw(i);
        const State& xy = q[0];
        const State& uv = q[1];
        const State& zw = q[2];
        const State& ts = q[3];
        const double lhs = model.distance(model.first(xy.x, xy.y), model.first(uv.x, uv.y)) +
                           model.distance(model.second(zw.x, zw.y), model.second(ts.x, ts.y));
        const double rhs = c.alpha() * model.distance(xy.x, uv.x) +
                           c.beta() * model.distance(xy.y, uv.y) +
                           c.gamma() * model.distance(zw.x, ts.x) +
                           c.delta() * model.distance(zw.y, ts.y);
        // Both maps at the same pair of points: bounded by k times the input distance.
        const double moved = model.distance(xy.x, uv.x) + model.distance(xy.y, uv.y);
        double ratio = 0.0;
        if (moved > 1e-12) {
          ratio = (model.distance(model.first(xy.x, xy.y), model.first(uv.x, uv.y)) +
                   model.distance(model.second(xy.x, xy.y), model.second(uv.x, uv.y))) /
                  moved;
        }
        return std::pair{rhs - lhs, ratio};
      });

  report.violations = total.violations;
  report.worst_slack = total.worst;
  report.worst_index = total.worst_index;
  for (const State& s : draw(total.worst_index)) {
    append(report.worst_witness, s.x);
    append(report.worst_witness, s.y);
  }
  report.empirical_k = total.ratio;
  report.declared_k = contraction_factor(c);
  return report;
}

CertReport check_type_two(const ResponseModel& model, std::size_t n_samples, std::uint64_t seed,
                          const SamplingOptions& options) {
  const auto* params = std::get_if<TypeTwoParams>(&model.contraction());
  if (!params) {
    throw Error(ErrorCode::kWrongModelKind,
                "check_type_two: model '" + model.id() + "' declares type-one constants");
  }
  CertReport report = base_report("type-two", model, n_samples, seed, options.tolerance);
  const TypeTwoParams c = *params;
  const double d = c.d();
  const Domain& dom = model.domain();

  auto draw = [&](std::size_t i) {
    return std::array<State, 2>{sample_domain(dom, seed, i, 0), sample_domain(dom, seed, i, 1)};
  };
  const Partial total =
      run_samples(n_samples, resolve_threads(options.threads), options.tolerance, [&](std::size_t i) {
        const auto q = draw(i);
        const State& xy = q[0];
        const State& uv = q[1];
        const double lhs = model.distance(model.first(xy.x, xy.y), model.second(uv.x, uv.y));
        const double xv = model.distance(xy.x, uv.y);
        const double yu = model.distance(xy.y, uv.x);
        const double rhs = c.alpha() * xv + c.beta() * yu + (1.0 - c.sum()) * d;
        const double excess = std::max(xv - d, yu - d);
        const double ratio = excess > 1e-12 ? (lhs - d) / excess : 0.0;
        return std::pair{rhs - lhs, ratio};
      });

  report.violations = total.violations;
  report.worst_slack = total.worst;
  report.worst_index = total.worst_index;
  for (const State& s : draw(total.worst_index)) {
    append(report.worst_witness, s.x);
    append(report.worst_witness, s.y);
  }
  report.empirical_k = total.ratio;
  report.declared_k = c.sum();
  return report;
}

CertReport check_domain_invariance(const ResponseModel& model, std::size_t n_samples,
                                   std::uint64_t seed, const SamplingOptions& options) {
  CertReport report = base_report("domain-invariance", model, n_samples, seed, options.tolerance);
  const Domain& dom = model.domain();
  const Partial total =
      run_samples(n_samples, resolve_threads(options.threads), options.tolerance, [&](std::size_t i) {
        const State s = sample_domain(dom, seed, i, 0);
        const State img = model.step(s);
        return std::pair{domain_margin(dom, img.x, img.y), 0.0};
      });
  report.violations = total.violations;
  report.worst_slack = total.worst;
  report.worst_index = total.worst_index;
  const State w = sample_domain(dom, seed, total.worst_index, 0);
  append(report.worst_witness, w.x);
  append(report.worst_witness, w.y);
  return report;
}

std::string format_report(const CertReport& r) {
  std::ostringstream os;
  os.precision(6);
  os << "check: " << r.check << "\n"
     << "model: " << r.model_id << "\n"
     << "seed: " << r.seed << "\n"
     << "samples: " << r.samples << "\n"
     << "violations: " << r.violations << "\n"
     << "tolerance: " << r.tolerance << "\n"
     << "worst_slack: " << r.worst_slack << "\n"
     << "worst_index: " << r.worst_index << "\n"
     << "worst_witness:";
  for (double v : r.worst_witness) os << ' ' << v;
  os << "\n";
  if (r.empirical_k) os << "empirical_k: " << *r.empirical_k << "\n";
  if (r.declared_k) os << "declared_k: " << *r.declared_k << "\n";
  os << "status: " << (r.passed() ? "PASS" : "FAIL") << " (empirical, not a proof)\n";
  return os.str();
}

OracleResult brute_force_equilibrium(const ResponseModel& model, std::size_t points_per_axis,
                                     const OracleOptions& options) {
  if (points_per_axis < 2) {
    throw Error(ErrorCode::kInvalidArgument, "brute_force_equilibrium: need >= 2 points per axis");
  }
  const Domain& dom = model.domain();
  const std::size_t dx = dom.x_set().dimension();
  const std::size_t dims = dx + dom.y_set().dimension();
  double total = 1.0;
  for (std::size_t i = 0; i < dims; ++i) total *= static_cast<double>(points_per_axis);
  if (total > static_cast<double>(options.max_grid)) {
    std::ostringstream os;
    os << "brute_force_equilibrium: grid of " << points_per_axis << "^" << dims
       << " points exceeds the limit of " << options.max_grid;
    throw Error(ErrorCode::kGridTooLarge, os.str());
  }
  const std::size_t count = static_cast<std::size_t>(total);

  std::vector<double> lo(dims), hi(dims);
  for (std::size_t i = 0; i < dims; ++i) {
    const Box& b = i < dx ? dom.x_set() : dom.y_set();
    const std::size_t j = i < dx ? i : i - dx;
    lo[i] = b.lower()[j];
    hi[i] = b.upper()[j];
  }
  const std::vector<double> box_lo = lo, box_hi = hi;

  const bool proximity = model.kind() == ModelKind::kBestProximity;
  const double d = proximity ? model.set_distance() : 0.0;
  auto objective = [&](const Point& x, const Point& y) {
    if (dom.coupling() && dom.coupling()->slack(x, y) < 0.0) {
      return std::numeric_limits<double>::infinity();
    }
    const Point Fx = model.first(x, y);
    const Point fy = model.second(x, y);
    if (proximity) {
      return std::abs(model.distance(y, Fx) - d) + std::abs(model.distance(x, fy) - d);
    }
    return model.distance(x, Fx) + model.distance(y, fy);
  };

  auto point_at = [&](std::size_t index, const std::vector<double>& step) {
    std::vector<double> xs(dx), ys(dims - dx);
    for (std::size_t i = 0; i < dims; ++i) {
      const std::size_t k = index % points_per_axis;
      index /= points_per_axis;
      const double v = k + 1 == points_per_axis ? hi[i] : lo[i] + step[i] * static_cast<double>(k);
      (i < dx ? xs[i] : ys[i - dx]) = v;
    }
    return State{Point(std::move(xs)), Point(std::move(ys))};
  };

  const unsigned threads = resolve_threads(options.threads);
  std::optional<State> incumbent;
  double incumbent_value = 0.0;
  std::vector<double> center(dims);
  double pitch = 0.0;
  std::size_t round = 0;
  for (;; ++round) {
    std::vector<double> step(dims);
    pitch = 0.0;
    for (std::size_t i = 0; i < dims; ++i) {
      step[i] = (hi[i] - lo[i]) / static_cast<double>(points_per_axis - 1);
      pitch = std::max(pitch, step[i]);
    }
    struct Best {
      double value = std::numeric_limits<double>::infinity();
      std::size_t index = 0;
    };
    std::vector<Best> parts(threads);
    auto work = [&](unsigned t) {
      const std::size_t begin = count * t / threads;
      const std::size_t end = count * (t + 1) / threads;
      Best& b = parts[t];
      for (std::size_t i = begin; i < end; ++i) {
        const State s = point_at(i, step);
        const double v = objective(s.x, s.y);
        if (v < b.value) {
          b.value = v;
          b.index = i;
        }
      }
    };
    if (threads == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
      for (auto& th : pool) th.join();
    }
    Best winner;
    for (const Best& b : parts) {
      if (b.value < winner.value) winner = b;
    }
    if (!std::isfinite(winner.value)) {
      throw Error(ErrorCode::kInfeasibleDomain, "brute_force_equilibrium: no grid point lies in D");
    }
    incumbent = point_at(winner.index, step);
    incumbent_value = winner.value;

    if (round >= options.max_rounds ||
        (round >= options.min_rounds && pitch <= options.target_pitch)) {
      break;
    }
    for (std::size_t i = 0; i < dims; ++i) {
      center[i] = i < dx ? incumbent->x[i] : incumbent->y[i - dx];
      const double half = (hi[i] - lo[i]) / 20.0;
      lo[i] = std::max(box_lo[i], center[i] - half);
      hi[i] = std::min(box_hi[i], center[i] + half);
    }
  }
  return OracleResult{*incumbent, incumbent_value, pitch, round};
}

bool lemma_decay_check(const IterationTrace& trace, const TypeTwoParams& params, double tol) {
  if (trace.pair_gaps.size() != trace.points.size()) {
    throw Error(ErrorCode::kWrongModelKind,
                "lemma_decay_check: trace carries no pair gaps (not a best-proximity run)");
  }
  for (std::size_t n = 1; n < trace.pair_gaps.size(); ++n) {
    if (trace.pair_gaps[n] > params.sum() * trace.pair_gaps[n - 1] + tol) return false;
  }
  return true;
}

}  // namespace duopoly
