#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "duopoly/cli/commands.hpp"
#include "duopoly/error.hpp"
#include "duopoly/models.hpp"
#include "duopoly/verify.hpp"

namespace py = pybind11;
using namespace duopoly;

namespace {

using Coords = std::vector<double>;

ResponseModel lookup(const std::string& id, std::optional<double> p) {
  if (p) {
    if (id != "two-product") throw Error(ErrorCode::kInvalidArgument, "p applies to two-product only");
    return two_product_model(*p);
  }
  return model_by_id(id);
}

State make_state(const ResponseModel& m, const std::optional<std::pair<Coords, Coords>>& start) {
  if (!start) return default_start(m.id());
  return {Point(start->first), Point(start->second)};
}

py::tuple state_tuple(const State& s) { return py::make_tuple(s.x.values(), s.y.values()); }

py::dict trace_dict(const IterationTrace& t) {
  py::list points;
  for (const auto& s : t.points) points.append(state_tuple(s));
  py::dict d;
  d["status"] = std::string(to_string(t.status));
  d["iterations"] = t.iterations;
  d["first_index"] = t.first_index;
  d["factor"] = t.factor;
  d["k_overridden"] = t.k_overridden;
  d["points"] = points;
  d["step_sums"] = t.step_sums;
  d["a_priori"] = t.a_priori;
  d["a_posteriori"] = t.a_posteriori;
  d["pair_gaps"] = t.pair_gaps;
  if (t.exit) {
    d["exit_index"] = t.exit->index;
    d["exit_reason"] = t.exit->violated;
  }
  return d;
}

py::dict report_dict(const CertReport& r) {
  py::dict d;
  d["check"] = r.check;
  d["model"] = r.model_id;
  d["seed"] = r.seed;
  d["samples"] = r.samples;
  d["violations"] = r.violations;
  d["worst_slack"] = r.worst_slack;
  d["empirical_k"] = r.empirical_k;
  d["declared_k"] = r.declared_k;
  d["passed"] = r.passed();
  return d;
}

}  // namespace

PYBIND11_MODULE(duopoly, m) {
  m.doc() = "Coupled best-response iteration with certified error bounds";
  py::register_exception<Error>(m, "DuopolyError", PyExc_ValueError);

  m.def("catalog_ids", &catalog_ids);

  m.def(
      "model_info",
      [](const std::string& id, std::optional<double> p) {
        const auto model = lookup(id, p);
        py::dict d;
        d["id"] = model.id();
        d["description"] = model.description();
        d["kind"] = std::string(to_string(model.kind()));
        d["dimension"] = model.dimension();
        d["norm_p"] = model.metric().p;
        if (const auto* one = std::get_if<TypeOneParams>(&model.contraction())) {
          d["constants"] = py::make_tuple(one->alpha(), one->beta(), one->gamma(), one->delta());
          d["factor"] = contraction_factor(*one);
        } else {
          const auto& two = std::get<TypeTwoParams>(model.contraction());
          d["constants"] = py::make_tuple(two.alpha(), two.beta());
          d["factor"] = two.sum();
          d["set_distance"] = two.d();
        }
        d["default_start"] = state_tuple(default_start(model.id()));
        if (model.known_equilibrium()) d["equilibrium"] = state_tuple(*model.known_equilibrium());
        return d;
      },
      py::arg("model_id"), py::arg("p") = py::none());

  m.def(
      "step",
      [](const std::string& id, const Coords& x, const Coords& y, std::optional<double> p) {
        return state_tuple(lookup(id, p).step({Point(x), Point(y)}));
      },
      py::arg("model_id"), py::arg("x"), py::arg("y"), py::arg("p") = py::none());

  m.def(
      "solve",
      [](const std::string& id, std::optional<std::pair<Coords, Coords>> start, double tol,
         std::size_t max_iter, std::optional<std::size_t> fixed, std::optional<double> k_override,
         std::optional<double> p) {
        const auto model = lookup(id, p);
        IterateOptions opts;
        opts.k_override = k_override;
        const StoppingRule rule = fixed ? StoppingRule::fixed(*fixed) : StoppingRule::a_posteriori(tol, max_iter);
        IterationTrace t;
        {
          py::gil_scoped_release release;
          t = iterate(model, make_state(model, start), rule, opts);
        }
        return trace_dict(t);
      },
      py::arg("model_id"), py::arg("start") = py::none(), py::arg("tol") = 1e-6,
      py::arg("max_iter") = 1'000'000, py::arg("fixed") = py::none(), py::arg("k_override") = py::none(),
      py::arg("p") = py::none());

  m.def(
      "bounds",
      [](const std::string& id, std::optional<std::pair<Coords, Coords>> start, const std::vector<double>& eps,
         std::optional<double> k_override) {
        const auto model = lookup(id, std::nullopt);
        py::list out;
        for (const auto& r : cli::iteration_counts(model, make_state(model, start), eps, k_override)) {
          py::dict d;
          d["eps"] = r.eps;
          d["a_priori"] = r.a_priori;
          d["a_posteriori"] = r.a_posteriori;
          out.append(d);
        }
        return out;
      },
      py::arg("model_id"), py::arg("start") = py::none(),
      py::arg("eps") = std::vector<double>{0.1, 0.01, 0.001, 0.0001, 0.00001},
      py::arg("k_override") = py::none());

  m.def(
      "verify",
      [](const std::string& id, std::size_t samples, std::uint64_t seed, double shrink) {
        auto model = lookup(id, std::nullopt);
        if (shrink != 1.0) {
          if (const auto* one = std::get_if<TypeOneParams>(&model.contraction())) {
            model = model.with_contraction(one->scaled(shrink));
          } else {
            model = model.with_contraction(std::get<TypeTwoParams>(model.contraction()).scaled(shrink));
          }
        }
        SamplingOptions so;
        so.threads = 0;
        py::list out;
        std::vector<CertReport> reports;
        {
          py::gil_scoped_release release;
          reports.push_back(model.kind() == ModelKind::kFixedPoint ? check_type_one(model, samples, seed, so)
                                                                    : check_type_two(model, samples, seed, so));
          reports.push_back(check_domain_invariance(model, samples, seed, so));
        }
        for (const auto& r : reports) out.append(report_dict(r));
        return out;
      },
      py::arg("model_id"), py::arg("samples") = 100'000, py::arg("seed") = 42, py::arg("shrink") = 1.0);

  m.def(
      "oracle_equilibrium",
      [](const std::string& id, std::size_t grid) {
        const auto model = lookup(id, std::nullopt);
        OracleOptions oo;
        oo.threads = 0;
        OracleResult r = [&] {
          py::gil_scoped_release release;
          return brute_force_equilibrium(model, grid, oo);
        }();
        py::dict d;
        d["point"] = state_tuple(r.point);
        d["objective"] = r.objective;
        d["pitch"] = r.pitch;
        d["rounds"] = r.rounds;
        return d;
      },
      py::arg("model_id"), py::arg("grid") = 41);

  m.def("contraction_factor", [](double a, double b, double g, double d) {
    return contraction_factor(TypeOneParams(a, b, g, d));
  });
  m.def("a_priori_fixed", &a_priori_fixed, py::arg("k"), py::arg("d0"), py::arg("n"));
  m.def("a_posteriori_fixed", &a_posteriori_fixed, py::arg("k"), py::arg("s_n"));
  m.def("iterations_for_a_priori", &iterations_for_a_priori, py::arg("k"), py::arg("d0"), py::arg("eps"));

  m.def(
      "reference_table",
      [](int number, std::optional<double> k_override) {
        const auto t = cli::reference_table(number, k_override, cli::OutputFormat::kCsv);
        py::dict d;
        d["comments"] = t.comments;
        d["header"] = t.header;
        d["rows"] = t.rows;
        return d;
      },
      py::arg("number"), py::arg("k_override") = py::none());
}
