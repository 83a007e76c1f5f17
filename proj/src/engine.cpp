#include "duopoly/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "duopoly/error.hpp"

namespace duopoly {

namespace {

constexpr double kDomainTol = 1e-9;

// Per-model bound evaluation for one step n >= 1.
class BoundTracker {
 public:
  BoundTracker(const ResponseModel& model, const IterateOptions& options) : model_(model) {
    if (const auto* one = std::get_if<TypeOneParams>(&model.contraction())) {
      factor_ = contraction_factor(*one);
      if (options.k_override) {
        if (!(*options.k_override > 0.0 && *options.k_override < 1.0)) {
          throw Error(ErrorCode::kInvalidArgument, "k override must lie in (0, 1)");
        }
        factor_ = *options.k_override;
        overridden_ = true;
      }
    } else {
      const auto& two = std::get<TypeTwoParams>(model.contraction());
      factor_ = two.sum();
      power_ = power_type_constants(model.metric());
      proximity_ = true;
    }
  }

  double factor() const { return factor_; }
  bool overridden() const { return overridden_; }

  // Returns {a priori, a posteriori} for the step prev -> cur.
  std::pair<double, double> bounds(std::size_t n, const State& prev, const State& cur,
                                   double step_sum) {
    if (!proximity_) {
      if (n == 1) d0_ = step_sum;
      return {a_priori_fixed(factor_, d0_, static_cast<std::int64_t>(n)),
              a_posteriori_fixed(factor_, step_sum)};
    }
    const auto& params = std::get<TypeTwoParams>(model_.contraction());
    const double d = params.d();
    const double same = model_.distance(prev.x, prev.y);
    // M uses ||x_{n-1} - y_n||, N uses ||y_{n-1} - x_n||; W = max(...) - d in both.
    const double m_x = std::max(same, model_.distance(prev.x, cur.y));
    const double m_y = std::max(same, model_.distance(prev.y, cur.x));
    if (n == 1) {
      m0_x_ = m_x;
      m0_y_ = m_y;
    }
    const auto prior = [&](double m0) {
      return a_priori_prox(params, power_.C, power_.q, m0, std::max(0.0, m0 - d),
                           static_cast<std::int64_t>(n));
    };
    const auto post = [&](double m) {
      return a_posteriori_prox(params, power_.C, power_.q, m, std::max(0.0, m - d));
    };
    return {std::max(prior(m0_x_), prior(m0_y_)), std::max(post(m_x), post(m_y))};
  }

 private:
  const ResponseModel& model_;
  double factor_ = 0.0;
  bool overridden_ = false;
  bool proximity_ = false;
  PowerTypeConstants power_{0.0, 1.0};
  double d0_ = 0.0;
  double m0_x_ = 0.0;
  double m0_y_ = 0.0;
};

template <typename T>
void push_bounded(std::vector<T>& v, T value, bool keep_history, std::size_t keep) {
  v.push_back(std::move(value));
  if (!keep_history && v.size() > keep) v.erase(v.begin(), v.end() - keep);
}

}  // namespace

StoppingRule StoppingRule::a_posteriori(double tolerance, std::size_t max_iter) {
  return {tolerance, max_iter, Criterion::kAPosterioriBound, 0};
}

StoppingRule StoppingRule::residual(double tolerance, std::size_t max_iter) {
  return {tolerance, max_iter, Criterion::kResidual, 0};
}

StoppingRule StoppingRule::fixed(std::size_t count) {
  return {1.0, std::max<std::size_t>(count, 1), Criterion::kFixedCount, count};
}

void StoppingRule::validate() const {
  if (!(tolerance > 0.0)) throw Error(ErrorCode::kInvalidArgument, "tolerance must be > 0");
  if (max_iter < 1) throw Error(ErrorCode::kInvalidArgument, "max_iter must be >= 1");
}

std::string_view to_string(TraceStatus status) {
  switch (status) {
    case TraceStatus::kConverged: return "Converged";
    case TraceStatus::kCompleted: return "Completed";
    case TraceStatus::kMaxIterExceeded: return "MaxIterExceeded";
    case TraceStatus::kDomainExit: return "DomainExit";
  }
  return "Unknown";
}

double IterationTrace::final_a_posteriori() const {
  return a_posteriori.empty() ? std::numeric_limits<double>::infinity() : a_posteriori.back();
}

IterationTrace iterate(const ResponseModel& model, const State& init, const StoppingRule& rule,
                       const IterateOptions& options) {
  rule.validate();
  if (init.x.dimension() != model.dimension() || init.y.dimension() != model.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch, "iterate: start point dimension mismatch");
  }
  if (auto why = model.domain().violation(init.x, init.y, kDomainTol)) {
    throw Error(ErrorCode::kInitOutsideDomain,
                "start (" + init.x.to_string() + ", " + init.y.to_string() +
                    ") is outside the domain of '" + model.id() + "': " + *why);
  }

  BoundTracker tracker(model, options);
  const bool proximity = model.kind() == ModelKind::kBestProximity;
  const double d = proximity ? model.set_distance() : 0.0;
  const bool keep = options.keep_history;

  IterationTrace trace;
  trace.factor = tracker.factor();
  trace.k_overridden = tracker.overridden();
  trace.points.push_back(init);
  if (proximity) trace.pair_gaps.push_back(model.distance(init.x, init.y) - d);

  const std::size_t cap =
      rule.criterion == Criterion::kFixedCount ? rule.fixed_count : rule.max_iter;
  if (cap == 0) {
    trace.status = TraceStatus::kCompleted;
    return trace;
  }

  State current = init;
  for (std::size_t n = 1; n <= cap; ++n) {
    State next = model.step(current);
    if (auto why = model.domain().violation(next.x, next.y, kDomainTol)) {
      if (!options.clamp_to_domain) {
        trace.status = TraceStatus::kDomainExit;
        trace.exit = DomainExitInfo{n, next, *why};
        return trace;
      }
      next = {model.domain().x_set().clamp(next.x), model.domain().y_set().clamp(next.y)};
      trace.clamped = true;
    }

    const double step_sum = model.distance(current.x, next.x) + model.distance(current.y, next.y);
    const auto [prior, post] = tracker.bounds(n, current, next, step_sum);

    push_bounded(trace.step_sums, step_sum, keep, 1);
    push_bounded(trace.a_priori, prior, keep, 1);
    push_bounded(trace.a_posteriori, post, keep, 1);
    if (proximity) push_bounded(trace.pair_gaps, model.distance(next.x, next.y) - d, keep, 2);
    push_bounded(trace.points, next, keep, 2);
    trace.iterations = n;
    trace.first_index = n + 1 - trace.points.size();
    current = std::move(next);

    double value = 0.0;
    switch (rule.criterion) {
      case Criterion::kAPosterioriBound: value = post; break;
      case Criterion::kResidual: value = residual(model, current.x, current.y); break;
      case Criterion::kFixedCount: continue;
    }
    if (value <= rule.tolerance) {
      trace.status = TraceStatus::kConverged;
      return trace;
    }
  }
  trace.status = rule.criterion == Criterion::kFixedCount ? TraceStatus::kCompleted
                                                          : TraceStatus::kMaxIterExceeded;
  return trace;
}

double residual(const ResponseModel& model, const Point& x, const Point& y) {
  if (auto why = model.domain().violation(x, y, kDomainTol)) {
    throw Error(ErrorCode::kOutsideDomain, "residual: point outside domain: " + *why);
  }
  return model.distance(x, model.first(x, y)) + model.distance(y, model.second(x, y));
}

std::pair<double, double> proximity_gap(const ResponseModel& model, const Point& x,
                                        const Point& y) {
  if (model.kind() != ModelKind::kBestProximity) {
    throw Error(ErrorCode::kWrongModelKind,
                "proximity_gap: model '" + model.id() + "' is not a best-proximity model");
  }
  if (auto why = model.domain().violation(x, y, kDomainTol)) {
    throw Error(ErrorCode::kOutsideDomain, "proximity_gap: point outside domain: " + *why);
  }
  const double d = model.set_distance();
  return {model.distance(y, model.first(x, y)) - d, model.distance(x, model.second(x, y)) - d};
}

std::pair<std::optional<std::size_t>, IterationTrace> run_to_tolerance(
    const ResponseModel& model, const State& init, double eps, std::size_t max_iter,
    const IterateOptions& options) {
  IterationTrace trace = iterate(model, init, StoppingRule::a_posteriori(eps, max_iter), options);
  std::optional<std::size_t> n;
  if (trace.status == TraceStatus::kConverged) n = trace.iterations;
  return {n, std::move(trace)};
}

}  // namespace duopoly
