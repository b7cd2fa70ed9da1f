#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "distgraph/errors.hpp"
#include "distgraph/forms.hpp"
#include "distgraph/lab.hpp"
#include "distgraph/region.hpp"
#include "distgraph/testfn.hpp"

namespace distgraph::cli {
namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot write '" + path + "'");
  f << text;
}

std::string joined(const std::vector<std::string>& args) {
  std::string s;
  for (const auto& a : args) s += (s.empty() ? "" : " ") + a;
  return s;
}

DistanceGraph resolve_graph(const std::string& name, const std::string& file) {
  if (!name.empty() && !file.empty()) throw ValidationError("give either --graph or --graph-file, not both");
  if (!file.empty()) return graph_from_json(read_file(file));
  if (name.empty()) throw ValidationError("--graph or --graph-file is required");
  return catalog_graph(name);
}

std::int64_t parse_int(const std::string& s) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::logic_error&) {
    throw ValidationError("expected an integer, got '" + s + "'");
  }
  if (used != s.size()) throw ValidationError("expected an integer, got '" + s + "'");
  return v;
}

// "a,b,c" or "lo:hi" or "lo:hi:step"
std::vector<std::int64_t> parse_lambdas(const std::string& text) {
  std::vector<std::int64_t> out;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string p;
    while (std::getline(ss, p, ':')) parts.push_back(p);
    if (parts.size() < 2 || parts.size() > 3) throw ValidationError("lambda range is lo:hi or lo:hi:step");
    const auto lo = parse_int(parts[0]), hi = parse_int(parts[1]);
    const auto step = parts.size() == 3 ? parse_int(parts[2]) : 1;
    if (step < 1) throw ValidationError("lambda range step must be positive");
    for (auto l = lo; l <= hi; l += step) out.push_back(l);
    return out;
  }
  std::stringstream ss(text);
  std::string p;
  while (std::getline(ss, p, ',')) out.push_back(parse_int(p));
  return out;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string p;
  while (std::getline(ss, p, ',')) out.push_back(p);
  return out;
}

NormalizationMode parse_mode(const std::string& m) {
  if (m == "exact") return NormalizationMode::ExactCount;
  if (m == "raw") return NormalizationMode::Unnormalized;
  throw ValidationError("--mode is exact or raw, got '" + m + "'");
}

// one spec replicated to every vertex, or one per vertex
std::vector<TestFunctionSpec> function_specs(const std::vector<std::string>& fns, int k) {
  if (fns.empty()) throw ValidationError("--fn is required");
  std::vector<TestFunctionSpec> out;
  for (const auto& f : fns) out.push_back(parse_function_spec(f));
  if (out.size() == 1) out.assign(k, out.front());
  if (static_cast<int>(out.size()) != k) {
    throw DimensionMismatch("graph has " + std::to_string(k) + " vertices but " + std::to_string(fns.size()) +
                            " --fn specs were given");
  }
  return out;
}

HolderPoint holder_reciprocals(const std::string& text, int k) {
  HolderPoint out;
  for (const auto& p : split_list(text)) out.push_back(parse_holder(p).reciprocal());
  if (out.size() == 1) out.assign(k, out.front());
  if (static_cast<int>(out.size()) != k) {
    throw DimensionMismatch("graph has " + std::to_string(k) + " vertices but " + std::to_string(out.size()) +
                            " exponents were given");
  }
  return out;
}

json point_json(const HolderPoint& p) {
  json a = json::array();
  for (const auto& x : p) a.push_back(format_rational(x));
  return a;
}

json rows_json(const SweepTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows) {
    rows.push_back({{"lambda", r.lambda}, {"n_config", to_string(r.n_config)}, {"form_value", r.form_value},
                    {"norm_product", r.norm_product}});
  }
  return rows;
}

struct Context {
  std::vector<std::string> args;
  std::ostream& out;
  std::ostream& err;
};

json inputs_json(const Context& c) { return json{{"args", c.args}}; }

void echo_inputs(const Context& c) { c.err << "# distgraph " << joined(c.args) << "\n"; }

int run_report(const std::string& plan_path, const std::string& out_dir, Context& ctx);

int dispatch(Context& ctx) {
  CLI::App app{"Discrete distance-graph forms on Z^d", "distgraph"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::string graph, graph_file, out, fn_mode = "exact", strategy = "auto", lambdas, p_list, table, point, name,
                                      assign, plan, out_dir;
  std::vector<std::string> fns;
  int d = 0, threads = 1, samples = 0, k = 2;
  std::int64_t lambda = 0, lo = 0, hi = 0;
  std::uint64_t seed = 1, max_points = EnumerationLimits{}.max_points;
  bool count_only = false, no_symmetry = false, hull_only = false;

  auto add_graph = [&](CLI::App* s) {
    s->add_option("--graph", graph, "catalog name (P1, P2, P7, K3, K4, K6, C4, C4t, K3t, Y, ...)");
    s->add_option("--graph-file", graph_file, "JSON edge list, 1-based vertices");
  };
  auto add_budget = [&](CLI::App* s) {
    s->add_option("--max-points", max_points, "enumeration budget before a capacity error");
    s->add_flag("--no-symmetry", no_symmetry, "disable signed-permutation orbit reduction");
  };

  auto* sphere = app.add_subcommand("sphere", "lattice points with |x|^2 = lambda");
  sphere->add_option("--d", d)->required();
  sphere->add_option("--lambda", lambda)->required();
  sphere->add_flag("--count-only", count_only);
  sphere->add_option("--out", out);
  add_budget(sphere);

  auto* count = app.add_subcommand("count", "anchored configuration count N_G(lambda)");
  add_graph(count);
  count->add_option("--d", d)->required();
  count->add_option("--lambda", lambda)->required();
  add_budget(count);

  auto* adm = app.add_subcommand("admissible", "lambdas in [min, max] with N_G > 0");
  add_graph(adm);
  adm->add_option("--d", d)->required();
  adm->add_option("--min", lo)->required();
  adm->add_option("--max", hi)->required();
  add_budget(adm);

  auto* eval = app.add_subcommand("eval", "evaluate the form at one lambda");
  add_graph(eval);
  eval->add_option("--d", d)->required();
  eval->add_option("--lambda", lambda)->required();
  eval->add_option("--fn", fns, "ball[:a=r] | sphere | delta | ones:<w> | file:<path>")->required();
  eval->add_option("--mode", fn_mode, "exact or raw");
  eval->add_option("--strategy", strategy, "auto, backtracking, tree, chain, shapes");
  eval->add_option("--out", out);
  add_budget(eval);

  auto* sweep = app.add_subcommand("sweep", "form values and norm ratios across lambda");
  add_graph(sweep);
  sweep->add_option("--d", d)->required();
  sweep->add_option("--lambdas", lambdas, "comma list or lo:hi[:step]")->required();
  sweep->add_option("--fn", fns)->required();
  sweep->add_option("--p", p_list, "exponents p_i as num/den or inf")->required();
  sweep->add_option("--mode", fn_mode);
  sweep->add_option("--strategy", strategy);
  sweep->add_option("--threads", threads);
  sweep->add_option("--out", out);
  add_budget(sweep);

  auto* fit = app.add_subcommand("fit", "log-log least squares on a sweep table");
  fit->add_option("--table", table)->required();
  fit->add_option("--out", out);

  auto* region = app.add_subcommand("region", "exponent regions and membership");
  add_graph(region);
  region->add_option("--name", name, "half-space system: P2, K3, K3t, Pk, sphavg");
  region->add_option("--k", k, "chain length for Pk");
  region->add_option("--d", d)->required();
  region->add_option("--point", point, "Holder reciprocals, num/den");
  region->add_option("--cross-validate", samples, "number of sampled points");
  region->add_option("--seed", seed);
  region->add_flag("--hull-only", hull_only, "compare the hull with its own facet system");
  region->add_option("--out", out);

  auto* probe = app.add_subcommand("probe", "decay of the form on sphere/delta assignments");
  add_graph(probe);
  probe->add_option("--d", d)->required();
  probe->add_option("--assign", assign, "S or delta per vertex, comma separated")->required();
  probe->add_option("--lambdas", lambdas)->required();
  probe->add_option("--threads", threads);
  probe->add_option("--out", out);
  add_budget(probe);

  auto* cex = app.add_subcommand("counterexample", "C4 and C4t probes at the K4 corner");
  cex->add_option("--d", d)->required();
  cex->add_option("--lmin", lo)->required();
  cex->add_option("--lmax", hi)->required();
  cex->add_option("--threads", threads);
  cex->add_option("--out", out);
  add_budget(cex);

  auto* report = app.add_subcommand("report", "re-run a list of invocations into a directory");
  report->add_option("--plan", plan, "JSON {\"invocations\": [{\"name\": ..., \"args\": [...]}]}")->required();
  report->add_option("--out-dir", out_dir)->required();

  std::vector<std::string> rev(ctx.args.rbegin(), ctx.args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    ctx.out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    ctx.out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    ctx.err << "error: " << e.what() << "\n";
    return kValidation;
  }

  EvalOptions opts;
  opts.use_symmetry = !no_symmetry;
  opts.limits.max_points = max_points;
  if (threads < 1) throw ValidationError("--threads must be positive");

  if (sphere->parsed()) {
    validate_dimension(d);
    if (lambda < 0) throw ValidationError("--lambda must be non-negative");
    echo_inputs(ctx);
    if (count_only) {
      const Count n = sphere_cardinality(d, lambda);
      emit(to_string(n) + "\n", out, ctx.out);
      return kOk;
    }
    const PointSet pts = enumerate_sphere(d, lambda, opts.limits);
    std::ostringstream ss;
    write_sphere_text(ss, d, lambda, pts);
    emit(ss.str(), out, ctx.out);
    return kOk;
  }
  if (count->parsed()) {
    const DistanceGraph g = resolve_graph(graph, graph_file);
    echo_inputs(ctx);
    ctx.out << to_string(count_configurations(g, d, lambda, opts).count) << "\n";
    return kOk;
  }
  if (adm->parsed()) {
    const DistanceGraph g = resolve_graph(graph, graph_file);
    echo_inputs(ctx);
    std::string s;
    for (auto l : admissible_radii(g, d, lo, hi, opts)) s += (s.empty() ? "" : ",") + std::to_string(l);
    ctx.out << s << "\n";
    return kOk;
  }
  if (eval->parsed()) {
    const DistanceGraph g = resolve_graph(graph, graph_file);
    const auto specs = function_specs(fns, g.vertex_count());
    const NormalizationMode mode = parse_mode(fn_mode);
    const Strategy strat = parse_strategy(strategy);
    validate_dimension(d);
    std::vector<FunctionOnLattice> fs;
    for (const auto& s : specs) fs.push_back(materialize(s, d, lambda, opts.limits));
    const FormValue v = evaluate_form(g, lambda, fs, mode, strat, opts);
    json j;
    j["inputs"] = inputs_json(ctx);
    j["graph"] = g.name();
    j["dimension"] = d;
    j["lambda"] = lambda;
    j["functions"] = json::array();
    for (const auto& s : specs) j["functions"].push_back(to_string(s));
    j["mode"] = to_string(mode);
    j["strategy_used"] = to_string(v.strategy_used);
    j["value"] = v.value;
    j["raw"] = v.raw;
    j["n_config"] = to_string(v.n_config);
    j["warnings"] = v.warnings;
    emit(j.dump(2) + "\n", out, ctx.out);
    return kOk;
  }
  if (sweep->parsed()) {
    SweepPlan plan;
    plan.graph = resolve_graph(graph, graph_file);
    plan.dimension = d;
    validate_dimension(d);
    plan.lambdas = parse_lambdas(lambdas);
    plan.functions = function_specs(fns, plan.graph.vertex_count());
    plan.holder = holder_reciprocals(p_list, plan.graph.vertex_count());
    plan.normalization = parse_mode(fn_mode);
    plan.strategy = parse_strategy(strategy);
    plan.options = opts;
    plan.threads = threads;
    echo_inputs(ctx);
    emit(table_to_csv(run_sweep(plan)), out, ctx.out);
    return kOk;
  }
  if (fit->parsed()) {
    const FitResult f = fit_exponent(table_from_csv(read_file(table)));
    echo_inputs(ctx);
    emit(fit_to_json(f) + "\n", out, ctx.out);
    return kOk;
  }
  if (region->parsed()) {
    const bool by_graph = !graph.empty();
    if (by_graph == !name.empty()) throw ValidationError("region needs exactly one of --graph or --name");
    if (samples < 0) throw ValidationError("--cross-validate must be positive");
    echo_inputs(ctx);
    if (by_graph) {
      const RegionSpec r = builtin_region(graph, d);
      if (!point.empty()) {
        emit(to_string(hull_membership(parse_point(point), r)) + "\n", out, ctx.out);
      } else if (samples > 0) {
        if (!hull_only) throw ValidationError("cross-validating a --graph region needs --hull-only or use --name");
        emit(report_to_json(cross_validate(r, facet_system(r), samples, seed)) + "\n", out, ctx.out);
      } else {
        emit(region_to_json(r) + "\n", out, ctx.out);
      }
      return kOk;
    }
    const HalfSpaceSystem sys = builtin_halfspaces(name, d, k);
    if (!point.empty()) {
      emit(to_string(classify(parse_point(point), sys)) + "\n", out, ctx.out);
      return kOk;
    }
    if (samples == 0) throw ValidationError("region --name needs --point or --cross-validate");
    // the system's region: its own hull where a vertex list exists
    std::string hull_name = name;
    if (name == "Pk") {
      if (k == 1) hull_name = "P1";
      else if (k == 2) hull_name = "P2";
      else throw ValidationError("no vertex list to compare the P" + std::to_string(k) + " system with");
    }
    const RegionSpec r = builtin_region(hull_name, d);
    emit(report_to_json(cross_validate(r, sys, samples, seed)) + "\n", out, ctx.out);
    return kOk;
  }
  if (probe->parsed()) {
    const DistanceGraph g = resolve_graph(graph, graph_file);
    std::vector<TestFunctionSpec> specs;
    for (const auto& a : split_list(assign)) {
      if (a == "S" || a == "sphere") {
        specs.push_back(TestFunctionSpec::sphere());
      } else if (a == "delta" || a == "d") {
        specs.push_back(TestFunctionSpec::delta());
      } else {
        throw ValidationError("--assign entries are S or delta, got '" + a + "'");
      }
    }
    if (static_cast<int>(specs.size()) != g.vertex_count()) {
      throw DimensionMismatch("--assign needs one entry per vertex (" + std::to_string(g.vertex_count()) + ")");
    }
    validate_dimension(d);
    const ProbeResult r = necessary_condition_probe(g, d, specs, parse_lambdas(lambdas), opts, threads);
    json j;
    j["inputs"] = inputs_json(ctx);
    j["graph"] = g.name();
    j["dimension"] = d;
    j["fit"] = json::parse(fit_to_json(r.fit));
    j["skipped"] = r.skipped;
    j["rows"] = rows_json(r.table);
    emit(j.dump(2) + "\n", out, ctx.out);
    return kOk;
  }
  if (cex->parsed()) {
    validate_dimension(d);
    const CounterexamplePair p = subgraph_counterexample(d, lo, hi, opts, threads);
    json j = json::parse(pair_to_json(p));
    j["inputs"] = inputs_json(ctx);
    j["C4_rows"] = rows_json(p.c4_probe.table);
    j["C4t_rows"] = rows_json(p.c4t_probe.table);
    emit(j.dump(2) + "\n", out, ctx.out);
    return kOk;
  }
  if (report->parsed()) return run_report(plan, out_dir, ctx);
  return kValidation;
}

int guarded(Context& ctx) {
  try {
    return dispatch(ctx);
  } catch (const ValidationError& e) {
    ctx.err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const AdmissibilityError& e) {
    ctx.err << "error: " << e.what() << "\n";
    return kAdmissibility;
  } catch (const ZeroForm& e) {
    ctx.err << "error: " << e.what() << "\n";
    return kAdmissibility;
  } catch (const CapacityError& e) {
    ctx.err << "error: " << e.what() << "\n";
    return kCapacity;
  } catch (const json::exception& e) {
    ctx.err << "error: malformed JSON: " << e.what() << "\n";
    return kValidation;
  } catch (const std::bad_alloc&) {
    ctx.err << "error: out of memory\n";
    return kCapacity;
  } catch (const std::exception& e) {
    ctx.err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

std::string extension_for(const std::vector<std::string>& args) {
  const std::string& sub = args.front();
  if (sub == "sweep") return ".csv";
  if (sub == "eval" || sub == "fit" || sub == "probe" || sub == "counterexample") return ".json";
  if (sub == "region") {
    for (const auto& a : args) {
      if (a == "--point") return ".txt";
    }
    return ".json";
  }
  return ".txt";
}

int run_report(const std::string& plan_path, const std::string& out_dir, Context& ctx) {
  const auto start = std::chrono::steady_clock::now();
  const json plan = json::parse(read_file(plan_path));
  if (!plan.contains("invocations") || !plan["invocations"].is_array()) {
    throw ValidationError("plan needs an \"invocations\" array");
  }
  std::vector<ReportItem> items;
  json invocations = json::array();
  int index = 0;
  for (const auto& inv : plan["invocations"]) {
    std::vector<std::string> args = inv.at("args").get<std::vector<std::string>>();
    if (args.empty()) throw ValidationError("empty invocation in plan");
    if (args.front() == "report") throw ValidationError("plans cannot nest report invocations");
    for (const auto& a : args) {
      if (a == "--out") throw ValidationError("plan invocations write into the report directory; drop --out");
    }
    std::string nm = inv.value("name", "");
    if (nm.empty()) nm = std::to_string(index) + "_" + args.front();
    ++index;
    std::ostringstream captured;
    Context sub{args, captured, ctx.err};
    const int code = guarded(sub);
    if (code != kOk) {
      ctx.err << "error: invocation '" << nm << "' failed with exit code " << code << "\n";
      return code;
    }
    items.push_back({nm + extension_for(args), captured.str(), json{{"args", args}}.dump()});
    invocations.push_back({{"name", nm}, {"args", args}});
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  json extra;
  extra["invocations"] = invocations;
  extra["plan"] = plan_path;
  emit_report(items, out_dir, secs, extra.dump());
  echo_inputs(ctx);
  ctx.out << out_dir << "\n";
  return kOk;
}

}  // namespace

int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx{args, out, err};
  return guarded(ctx);
}

}  // namespace distgraph::cli
