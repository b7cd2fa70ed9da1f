#include "distgraph/lab.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "distgraph/errors.hpp"

namespace distgraph {
namespace {

using nlohmann::json;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// runs body(i) for i in [0, n) on up to `threads` workers; rethrows the lowest-index failure
template <class Body>
void parallel_rows(std::size_t n, int threads, Body body) {
  std::vector<std::exception_ptr> errors(n);
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(n)));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
        break;
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            body(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void validate_lambdas(const std::vector<std::int64_t>& lambdas) {
  if (lambdas.empty()) throw ValidationError("no lambda values given");
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (lambdas[i] < 1) throw ValidationError("lambda values must be positive");
    if (i > 0 && lambdas[i] <= lambdas[i - 1]) throw ValidationError("lambda values must be strictly increasing");
  }
}

json point_json(const HolderPoint& p) {
  json a = json::array();
  for (const auto& x : p) a.push_back(format_rational(x));
  return a;
}

json report_json(const CounterexampleReport& r) {
  json j;
  j["graph"] = r.graph;
  j["corner"] = point_json(r.corner);
  j["measured_slope"] = r.measured_slope;
  j["conjectured_bound_slope"] = format_rational(r.conjectured_bound_slope);
  j["violation"] = r.violation;
  j["margin"] = r.margin;
  return j;
}

json fit_json(const FitResult& f) {
  return json{{"slope", f.slope}, {"intercept", f.intercept}, {"max_residual", f.max_residual},
              {"lambda_count", f.lambda_count}};
}

}  // namespace

std::vector<std::int64_t> admissible_subset(const DistanceGraph& g, int d, const std::vector<std::int64_t>& lambdas,
                                            const EvalOptions& opts) {
  std::vector<std::int64_t> out;
  for (auto l : lambdas) {
    if (count_configurations(g, d, l, opts).count > 0) out.push_back(l);
  }
  return out;
}

SweepTable run_sweep(const SweepPlan& plan) {
  const int k = plan.graph.vertex_count();
  validate_lambdas(plan.lambdas);
  if (static_cast<int>(plan.functions.size()) != k) {
    throw DimensionMismatch("sweep needs " + std::to_string(k) + " function specs, got " +
                            std::to_string(plan.functions.size()));
  }
  if (static_cast<int>(plan.holder.size()) != k) {
    throw DimensionMismatch("sweep needs " + std::to_string(k) + " Holder exponents, got " +
                            std::to_string(plan.holder.size()));
  }
  std::vector<HolderExponent> ps;
  for (const auto& r : plan.holder) ps.push_back(HolderExponent::from_reciprocal(r));

  SweepTable table;
  table.rows.resize(plan.lambdas.size());
  parallel_rows(plan.lambdas.size(), plan.threads, [&](std::size_t i) {
    const std::int64_t lambda = plan.lambdas[i];
    SweepRow& row = table.rows[i];
    row.lambda = lambda;
    row.n_config = count_configurations(plan.graph, plan.dimension, lambda, plan.options).count;
    if (row.n_config == 0) {
      throw AdmissibilityError("lambda=" + std::to_string(lambda) + " is not admissible for " + plan.graph.name(),
                               lambda);
    }
    std::map<std::string, FunctionOnLattice> cache;
    std::vector<FunctionOnLattice> fns;
    for (const auto& spec : plan.functions) {
      const std::string key = to_string(spec);
      auto it = cache.find(key);
      if (it == cache.end()) {
        try {
          it = cache.emplace(key, materialize(spec, plan.dimension, lambda, plan.options.limits)).first;
        } catch (const CapacityError& e) {
          throw CapacityError(std::string(e.what()) + " (at lambda=" + std::to_string(lambda) + ")");
        }
      }
      fns.push_back(it->second);
    }
    const FormValue fv = evaluate_form(plan.graph, lambda, fns, plan.normalization, plan.strategy, plan.options);
    row.form_value = fv.value;
    double norm = 1.0;
    for (int v = 0; v < k; ++v) norm *= lp_norm(fns[v], ps[v]);
    row.norm_product = norm;
    row.ratio = norm > 0 ? fv.value / norm : 0.0;
  });
  return table;
}

std::string table_to_csv(const SweepTable& table) {
  std::string out = "lambda,n_config,form_value,norm_product,ratio,log_lambda,log_ratio\n";
  for (const auto& r : table.rows) {
    const double ll = std::log(static_cast<double>(r.lambda));
    const double lr = r.ratio > 0 ? std::log(r.ratio) : std::nan("");
    out += std::to_string(r.lambda) + "," + to_string(r.n_config) + "," + fmt17(r.form_value) + "," +
           fmt17(r.norm_product) + "," + fmt17(r.ratio) + "," + fmt17(ll) + "," + fmt17(lr) + "\n";
  }
  return out;
}

SweepTable table_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("empty table");
  std::vector<std::string> header;
  {
    std::stringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) {
      if (!cell.empty() && cell.back() == '\r') cell.pop_back();
      header.push_back(cell);
    }
  }
  auto col = [&](const std::string& name) -> int {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return static_cast<int>(i);
    }
    return -1;
  };
  const int cl = col("lambda"), cn = col("n_config"), cf = col("form_value"), cp = col("norm_product"),
            cr = col("ratio");
  if (cl < 0 || cr < 0) throw ValidationError("table needs 'lambda' and 'ratio' columns");
  SweepTable t;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() < header.size()) throw ValidationError("short row at line " + std::to_string(lineno));
    try {
      SweepRow r;
      r.lambda = std::stoll(cells[cl]);
      r.ratio = std::stod(cells[cr]);
      if (cn >= 0) {
        Count c = 0;
        for (char ch : cells[cn]) {
          if (ch < '0' || ch > '9') break;
          c = c * 10 + static_cast<unsigned>(ch - '0');
        }
        r.n_config = c;
      }
      if (cf >= 0) r.form_value = std::stod(cells[cf]);
      if (cp >= 0) r.norm_product = std::stod(cells[cp]);
      t.rows.push_back(r);
    } catch (const std::logic_error&) {
      throw ValidationError("unparsable number at line " + std::to_string(lineno));
    }
  }
  return t;
}

FitResult fit_power_law(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw ValidationError("fit needs matching x and y columns");
  if (xs.size() < 4) throw ValidationError("fit needs at least 4 rows, got " + std::to_string(xs.size()));
  const std::size_t n = xs.size();
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(xs[i] > 0) || !(ys[i] > 0) || !std::isfinite(ys[i])) {
      throw DegenerateFit("fit needs positive finite values (row " + std::to_string(i + 1) + ")");
    }
    lx[i] = std::log(xs[i]);
    ly[i] = std::log(ys[i]);
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0) throw DegenerateFit("all lambda values are equal");
  FitResult f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.lambda_count = static_cast<int>(n);
  for (std::size_t i = 0; i < n; ++i) {
    f.max_residual = std::max(f.max_residual, std::fabs(ly[i] - (f.intercept + f.slope * lx[i])));
  }
  return f;
}

FitResult fit_exponent(const SweepTable& table) {
  std::vector<double> xs, ys;
  for (const auto& r : table.rows) {
    xs.push_back(static_cast<double>(r.lambda));
    ys.push_back(r.ratio);
  }
  return fit_power_law(xs, ys);
}

SharpnessResult sharpness_check(const std::string& graph, int d, const HolderPoint& holder,
                                const std::vector<std::int64_t>& lambdas, double tolerance, const EvalOptions& opts,
                                int threads) {
  SweepPlan plan;
  plan.graph = catalog_graph(graph);
  plan.dimension = d;
  plan.lambdas = admissible_subset(plan.graph, d, lambdas, opts);
  plan.functions.assign(plan.graph.vertex_count(), TestFunctionSpec::ball());
  plan.holder = holder;
  plan.options = opts;
  plan.threads = threads;
  SharpnessResult res;
  res.table = run_sweep(plan);
  res.fit = fit_exponent(res.table);
  res.conjectured = conjectured_exponent(d, holder);
  res.tolerance = tolerance;
  res.pass = std::fabs(res.fit.slope - to_double(res.conjectured)) <= tolerance;
  return res;
}

ProbeResult necessary_condition_probe(const DistanceGraph& g, int d, const std::vector<TestFunctionSpec>& assignment,
                                      const std::vector<std::int64_t>& lambdas, const EvalOptions& opts,
                                      int threads) {
  for (const auto& s : assignment) {
    if (s.kind != TestFunctionSpec::Kind::Sphere && s.kind != TestFunctionSpec::Kind::Delta) {
      throw ValidationError("probe assignments are sphere or delta per vertex");
    }
  }
  SweepPlan plan;
  plan.graph = g;
  plan.dimension = d;
  plan.lambdas = admissible_subset(g, d, lambdas, opts);
  if (plan.lambdas.empty()) throw ZeroForm("no admissible lambda in the probe range for " + g.name());
  plan.functions = assignment;
  plan.holder.assign(g.vertex_count(), Rational(0));
  plan.options = opts;
  plan.threads = threads;
  ProbeResult res;
  SweepTable all = run_sweep(plan);
  std::vector<double> xs, ys;
  for (const auto& r : all.rows) {
    if (r.form_value == 0.0) {
      res.skipped.push_back(r.lambda);
      continue;
    }
    res.table.rows.push_back(r);
    xs.push_back(static_cast<double>(r.lambda));
    ys.push_back(r.form_value);
  }
  if (res.table.rows.empty()) throw ZeroForm("the probe form vanishes at every lambda in range");
  res.fit = fit_power_law(xs, ys);
  return res;
}

CounterexampleReport make_counterexample_report(const std::string& graph, const HolderPoint& corner,
                                                double measured_slope, const Rational& bound_slope) {
  CounterexampleReport r;
  r.graph = graph;
  r.corner = corner;
  r.measured_slope = measured_slope;
  r.conjectured_bound_slope = bound_slope;
  r.margin = measured_slope - to_double(bound_slope);
  r.violation = r.margin > 0;
  return r;
}

CounterexamplePair subgraph_counterexample(int d, std::int64_t lmin, std::int64_t lmax, const EvalOptions& opts,
                                           int threads) {
  if (lmin > lmax) throw ValidationError("lmin must not exceed lmax");
  const DistanceGraph c4 = catalog_graph("C4");
  const DistanceGraph c4t = catalog_graph("C4t");
  std::vector<std::int64_t> range;
  for (auto l = std::max<std::int64_t>(lmin, 1); l <= lmax; ++l) range.push_back(l);
  // shared admissible set
  std::vector<std::int64_t> shared;
  for (auto l : admissible_subset(c4t, d, range, opts)) {
    if (count_configurations(c4, d, l, opts).count > 0) shared.push_back(l);
  }
  const Rational c(d - 1, d + 1);
  const HolderPoint corner = {Rational(0), c, Rational(0), c};
  const std::vector<TestFunctionSpec> assign = {TestFunctionSpec::sphere(), TestFunctionSpec::delta(),
                                                TestFunctionSpec::sphere(), TestFunctionSpec::delta()};
  CounterexamplePair out;
  out.dimension = d;
  out.lambdas = shared;
  out.c4_probe = necessary_condition_probe(c4, d, assign, shared, opts, threads);
  out.c4t_probe = necessary_condition_probe(c4t, d, assign, shared, opts, threads);
  const Rational bound = conjectured_exponent(d, corner);
  out.c4 = make_counterexample_report("C4", corner, out.c4_probe.fit.slope, bound);
  out.c4t = make_counterexample_report("C4t", corner, out.c4t_probe.fit.slope, bound);
  // K4 vertex list at this d, without its d >= 9 floor
  RegionSpec k4;
  k4.arity = 4;
  k4.provenance = "K4 simplex theorem";
  for (int i = 0; i < 4; ++i) {
    HolderPoint p(4, Rational(0));
    p[i] = 1;
    k4.vertices.push_back(p);
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      HolderPoint p(4, Rational(0));
      p[i] = c;
      p[j] = c;
      k4.vertices.push_back(p);
    }
  }
  out.corner_in_k4 = hull_membership(corner, k4);
  out.note = "bound slope is taken at the corner itself (epsilon = 0); the theorems need strict inequalities, so "
             "the corner is a limit of admissible points. Norm product is 1 since 1/p_1 = 1/p_3 = 0 and delta has unit norm.";
  if (d < 9) out.note += " The K4 hull verdict uses the K4 vertex list below its d >= 9 floor.";
  return out;
}

std::string fit_to_json(const FitResult& fit) { return fit_json(fit).dump(2); }

std::string report_to_json(const CounterexampleReport& report) { return report_json(report).dump(2); }

std::string pair_to_json(const CounterexamplePair& pair) {
  json j;
  j["dimension"] = pair.dimension;
  j["lambdas"] = pair.lambdas;
  j["C4"] = report_json(pair.c4);
  j["C4t"] = report_json(pair.c4t);
  j["corner_in_K4_region"] = to_string(pair.corner_in_k4);
  j["note"] = pair.note;
  return j.dump(2);
}

void emit_report(const std::vector<ReportItem>& items, const std::string& out_dir, double wall_clock_seconds,
                 const std::string& extra_manifest_json) {
  if (items.empty()) throw ValidationError("report has no results to write");
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw ValidationError("cannot create output directory '" + out_dir + "': " + ec.message());
  json manifest = json::parse(extra_manifest_json);
  manifest["library_version"] = DISTGRAPH_VERSION;
  manifest["wall_clock_seconds"] = wall_clock_seconds;
  manifest["items"] = json::array();
  for (const auto& item : items) {
    const fs::path p = fs::path(out_dir) / item.file;
    std::ofstream f(p, std::ios::binary);
    if (!f) throw ValidationError("cannot write '" + p.string() + "'");
    f << item.contents;
    manifest["items"].push_back({{"file", item.file}, {"inputs", json::parse(item.inputs.empty() ? "{}" : item.inputs)}});
  }
  std::ofstream m(fs::path(out_dir) / "manifest.json", std::ios::binary);
  if (!m) throw ValidationError("cannot write manifest in '" + out_dir + "'");
  m << manifest.dump(2) << "\n";
}

}  // namespace distgraph
