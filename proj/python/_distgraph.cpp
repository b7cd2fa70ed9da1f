#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cli.hpp"
#include "distgraph/errors.hpp"
#include "distgraph/forms.hpp"
#include "distgraph/lab.hpp"
#include "distgraph/region.hpp"
#include "distgraph/testfn.hpp"

namespace py = pybind11;
using namespace distgraph;

namespace {

// Count does not fit a C long; go through the decimal string
py::int_ to_py(Count c) { return py::int_(py::str(to_string(c))); }

EvalOptions options(bool use_symmetry, std::uint64_t max_points) {
  EvalOptions o;
  o.use_symmetry = use_symmetry;
  o.limits.max_points = max_points;
  return o;
}

std::vector<TestFunctionSpec> specs(const std::vector<std::string>& fns, int k) {
  std::vector<TestFunctionSpec> out;
  for (const auto& f : fns) out.push_back(parse_function_spec(f));
  if (out.size() == 1) out.assign(k, out.front());
  if (static_cast<int>(out.size()) != k) throw DimensionMismatch("one function spec per vertex, or a single spec");
  return out;
}

HolderPoint point_of(const std::vector<std::string>& xs) {
  HolderPoint p;
  for (const auto& x : xs) p.push_back(parse_rational(x));
  return p;
}

py::list rows(const SweepTable& t) {
  py::list out;
  for (const auto& r : t.rows) {
    py::dict d;
    d["lambda"] = r.lambda;
    d["n_config"] = to_py(r.n_config);
    d["form_value"] = r.form_value;
    d["norm_product"] = r.norm_product;
    d["ratio"] = r.ratio;
    out.append(d);
  }
  return out;
}

py::dict fit_dict(const FitResult& f) {
  py::dict d;
  d["slope"] = f.slope;
  d["intercept"] = f.intercept;
  d["max_residual"] = f.max_residual;
  d["lambda_count"] = f.lambda_count;
  return d;
}

}  // namespace

PYBIND11_MODULE(_distgraph, m) {
  m.doc() = "Discrete distance-graph forms on Z^d";
  m.attr("__version__") = DISTGRAPH_VERSION;

  static py::exception<ValidationError> validation(m, "ValidationError", PyExc_ValueError);
  static py::exception<AdmissibilityError> admissibility(m, "AdmissibilityError", PyExc_ArithmeticError);
  static py::exception<ZeroForm> zero(m, "ZeroForm", PyExc_ArithmeticError);
  static py::exception<CapacityError> capacity(m, "CapacityError", PyExc_MemoryError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ValidationError& e) {
      py::set_error(validation, e.what());
    } catch (const AdmissibilityError& e) {
      py::set_error(admissibility, e.what());
    } catch (const ZeroForm& e) {
      py::set_error(zero, e.what());
    } catch (const CapacityError& e) {
      py::set_error(capacity, e.what());
    }
  });

  m.def("catalog_names", &catalog_names);
  m.def(
      "graph_edges",
      [](const std::string& name) {
        const DistanceGraph g = catalog_graph(name);
        std::vector<std::pair<int, int>> e;
        for (auto [u, v] : g.edges()) e.emplace_back(u + 1, v + 1);
        return py::make_tuple(g.vertex_count(), e);
      },
      "vertex count and 1-based edge list of a catalog graph");

  m.def(
      "sphere",
      [](int d, std::int64_t lambda, std::uint64_t max_points) {
        EnumerationLimits lim;
        lim.max_points = max_points;
        const PointSet s = enumerate_sphere(d, lambda, lim);
        std::vector<Point> out;
        out.reserve(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) out.push_back(s.point(i));
        return out;
      },
      py::arg("d"), py::arg("lam"), py::arg("max_points") = EnumerationLimits{}.max_points);
  m.def("sphere_cardinality", [](int d, std::int64_t lambda) { return to_py(sphere_cardinality(d, lambda)); },
        py::arg("d"), py::arg("lam"));

  m.def(
      "count",
      [](const std::string& graph, int d, std::int64_t lambda, bool use_symmetry, std::uint64_t max_points) {
        return to_py(count_configurations(catalog_graph(graph), d, lambda, options(use_symmetry, max_points)).count);
      },
      py::arg("graph"), py::arg("d"), py::arg("lam"), py::arg("use_symmetry") = true,
      py::arg("max_points") = EnumerationLimits{}.max_points);
  m.def(
      "admissible",
      [](const std::string& graph, int d, std::int64_t lo, std::int64_t hi) {
        return admissible_radii(catalog_graph(graph), d, lo, hi);
      },
      py::arg("graph"), py::arg("d"), py::arg("lo"), py::arg("hi"));

  m.def(
      "evaluate",
      [](const std::string& graph, int d, std::int64_t lambda, const std::vector<std::string>& fns,
         const std::string& mode, const std::string& strategy, bool use_symmetry) {
        const DistanceGraph g = catalog_graph(graph);
        const EvalOptions opts = options(use_symmetry, EnumerationLimits{}.max_points);
        std::vector<FunctionOnLattice> f;
        for (const auto& s : specs(fns, g.vertex_count())) f.push_back(materialize(s, d, lambda, opts.limits));
        if (mode != "exact" && mode != "raw") throw ValidationError("mode is exact or raw");
        const FormValue v = evaluate_form(g, lambda, f, mode == "exact" ? NormalizationMode::ExactCount
                                                                         : NormalizationMode::Unnormalized,
                                          parse_strategy(strategy), opts);
        py::dict out;
        out["value"] = v.value;
        out["raw"] = v.raw;
        out["n_config"] = to_py(v.n_config);
        out["strategy_used"] = to_string(v.strategy_used);
        out["warnings"] = v.warnings;
        return out;
      },
      py::arg("graph"), py::arg("d"), py::arg("lam"), py::arg("fns"), py::arg("mode") = "exact",
      py::arg("strategy") = "auto", py::arg("use_symmetry") = true);

  m.def(
      "sweep",
      [](const std::string& graph, int d, const std::vector<std::int64_t>& lambdas, const std::vector<std::string>& fns,
         const std::vector<std::string>& p, int threads) {
        SweepPlan plan;
        plan.graph = catalog_graph(graph);
        plan.dimension = d;
        plan.lambdas = lambdas;
        plan.functions = specs(fns, plan.graph.vertex_count());
        for (const auto& x : p) plan.holder.push_back(parse_holder(x).reciprocal());
        if (plan.holder.size() == 1) plan.holder.assign(plan.graph.vertex_count(), plan.holder.front());
        plan.threads = threads;
        const SweepTable t = run_sweep(plan);
        return py::make_tuple(rows(t), table_to_csv(t));
      },
      py::arg("graph"), py::arg("d"), py::arg("lambdas"), py::arg("fns"), py::arg("p"), py::arg("threads") = 1,
      "rows as dicts and the CSV text");

  m.def(
      "fit",
      [](const std::vector<double>& lambdas, const std::vector<double>& values) {
        return fit_dict(fit_power_law(lambdas, values));
      },
      py::arg("lambdas"), py::arg("values"));
  m.def("fit_csv", [](const std::string& text) { return fit_dict(fit_exponent(table_from_csv(text))); });

  m.def(
      "hull_membership",
      [](const std::string& graph, int d, const std::vector<std::string>& point) {
        return to_string(hull_membership(point_of(point), builtin_region(graph, d)));
      },
      py::arg("graph"), py::arg("d"), py::arg("point"));
  m.def(
      "classify",
      [](const std::string& name, int d, const std::vector<std::string>& point, int k) {
        return to_string(classify(point_of(point), builtin_halfspaces(name, d, k)));
      },
      py::arg("name"), py::arg("d"), py::arg("point"), py::arg("k") = 2);
  m.def(
      "region_vertices",
      [](const std::string& graph, int d) {
        std::vector<std::vector<std::string>> out;
        for (const auto& v : builtin_region(graph, d).vertices) {
          std::vector<std::string> row;
          for (const auto& x : v) row.push_back(format_rational(x));
          out.push_back(row);
        }
        return out;
      },
      py::arg("graph"), py::arg("d"));
  m.def(
      "cross_validate",
      [](const std::string& name, int d, int samples, std::uint64_t seed) {
        return report_to_json(cross_validate(builtin_region(name, d), builtin_halfspaces(name, d), samples, seed));
      },
      py::arg("name"), py::arg("d"), py::arg("samples"), py::arg("seed") = 1);
  m.def(
      "conjectured_exponent",
      [](int d, const std::vector<std::string>& point) { return format_rational(conjectured_exponent(d, point_of(point))); },
      py::arg("d"), py::arg("point"));
  m.def(
      "interpolated_exponent",
      [](int d, const std::string& theta, const std::string& inv_p, const std::string& inv_q) {
        return format_rational(
            interpolated_exponent(d, parse_rational(theta), parse_rational(inv_p), parse_rational(inv_q)));
      },
      py::arg("d"), py::arg("theta"), py::arg("inv_p"), py::arg("inv_q"));

  m.def(
      "probe",
      [](const std::string& graph, int d, const std::vector<std::string>& assign,
         const std::vector<std::int64_t>& lambdas) {
        std::vector<TestFunctionSpec> a;
        for (const auto& s : assign) {
          if (s == "S") a.push_back(TestFunctionSpec::sphere());
          else if (s == "delta") a.push_back(TestFunctionSpec::delta());
          else throw ValidationError("assignment entries are S or delta");
        }
        const ProbeResult r = necessary_condition_probe(catalog_graph(graph), d, a, lambdas);
        py::dict out;
        out["fit"] = fit_dict(r.fit);
        out["rows"] = rows(r.table);
        out["skipped"] = r.skipped;
        return out;
      },
      py::arg("graph"), py::arg("d"), py::arg("assign"), py::arg("lambdas"));
  m.def(
      "counterexample",
      [](int d, std::int64_t lmin, std::int64_t lmax, int threads) {
        return pair_to_json(subgraph_counterexample(d, lmin, lmax, {}, threads));
      },
      py::arg("d"), py::arg("lmin"), py::arg("lmax"), py::arg("threads") = 1);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::execute(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "exit code, stdout text, stderr text");
}
