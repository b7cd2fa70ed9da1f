#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "distgraph/errors.hpp"
#include "distgraph/lab.hpp"
#include "oracles.hpp"

using namespace distgraph;

namespace {

SweepTable synthetic(const std::vector<std::int64_t>& lambdas, double c, double s) {
  SweepTable t;
  for (auto l : lambdas) {
    SweepRow r;
    r.lambda = l;
    r.n_config = 1;
    r.form_value = c * std::pow(static_cast<double>(l), s);
    r.norm_product = 1.0;
    r.ratio = r.form_value;
    t.rows.push_back(r);
  }
  return t;
}

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("distgraph_test_" + name);
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("fit recovers exact power laws") {
  CHECK(fit_exponent(synthetic({16, 24, 32, 40}, 3.0, -5.0 / 6.0)).slope == doctest::Approx(-5.0 / 6.0).epsilon(1e-12));
  CHECK(std::abs(fit_exponent(synthetic({2, 3, 5, 7, 11}, 0.5, 0.0)).slope) < 1e-9);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> slope(-5.0, 5.0), coef(0.01, 100.0);
  for (int i = 0; i < 100; ++i) {
    const double s = slope(rng), c = coef(rng);
    std::vector<std::int64_t> ls;
    for (std::int64_t l = 1 + i % 7; ls.size() < 4 + static_cast<std::size_t>(i % 5); l += 1 + i % 3) ls.push_back(l);
    const FitResult f = fit_exponent(synthetic(ls, c, s));
    CHECK(std::abs(f.slope - s) < 1e-9);
    CHECK(std::abs(f.intercept - std::log(c)) < 1e-8);
    CHECK(f.max_residual < 1e-9);
    CHECK(f.lambda_count == static_cast<int>(ls.size()));
  }
}

TEST_CASE("degenerate fits") {
  CHECK_THROWS_AS(fit_exponent(synthetic({4, 4, 4, 4}, 1.0, 1.0)), DegenerateFit);
  CHECK_THROWS_AS(fit_exponent(synthetic({1, 2, 3}, 1.0, 1.0)), ValidationError);
  CHECK_THROWS_AS(fit_exponent(synthetic({1, 2, 3, 4}, -1.0, 1.0)), DegenerateFit);
  CHECK_THROWS_AS(fit_exponent(synthetic({1, 2, 3, 4}, 0.0, 1.0)), DegenerateFit);
}

TEST_CASE("csv round trip") {
  SweepTable t = synthetic({16, 24, 32, 40}, 3.0, -0.7);
  t.rows[1].n_config = static_cast<Count>(1) << 80;
  const std::string csv = table_to_csv(t);
  CHECK(csv.rfind("lambda,n_config,form_value,norm_product,ratio,log_lambda,log_ratio\n", 0) == 0);
  const SweepTable back = table_from_csv(csv);
  REQUIRE(back.rows.size() == 4);
  CHECK(back.rows[1].n_config == t.rows[1].n_config);
  CHECK(back.rows[2].ratio == t.rows[2].ratio);
  CHECK(table_to_csv(back) == csv);
  CHECK_THROWS_AS(table_from_csv("lambda,value\n1,2\n"), ValidationError);
}

TEST_CASE("sweep of two deltas") {
  const auto path = scratch("e1.json");
  {
    std::ofstream f(path);
    f << function_to_json(FunctionOnLattice::delta_at({1, 0, 0, 0, 0}));
  }
  SweepPlan plan;
  plan.graph = catalog_graph("P1");
  plan.dimension = 5;
  plan.lambdas = {1};
  plan.functions = {TestFunctionSpec::delta(), TestFunctionSpec::custom(path.string())};
  plan.holder = {Rational(1, 2), Rational(1, 2)};
  const SweepTable t = run_sweep(plan);
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0].form_value == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(t.rows[0].norm_product == 1.0);
  CHECK(t.rows[0].ratio == doctest::Approx(0.1).epsilon(1e-15));
  std::filesystem::remove(path);
}

TEST_CASE("sweeps are independent of thread count") {
  SweepPlan plan;
  plan.graph = catalog_graph("K3");
  plan.dimension = 5;
  plan.lambdas = {2, 4, 6, 8, 10};
  plan.functions.assign(3, TestFunctionSpec::ball());
  plan.holder.assign(3, Rational(2, 3));
  const std::string one = table_to_csv(run_sweep(plan));
  plan.threads = 3;
  CHECK(table_to_csv(run_sweep(plan)) == one);
  const SweepTable t = run_sweep(plan);
  for (std::size_t i = 1; i < t.rows.size(); ++i) {
    CHECK(t.rows[i].n_config > 0);
    CHECK(t.rows[i].form_value > t.rows[i - 1].form_value);
  }
}

TEST_CASE("sweep errors name the lambda") {
  SweepPlan plan;
  plan.graph = catalog_graph("K3");
  plan.dimension = 5;
  plan.lambdas = {2, 3, 4};
  plan.functions.assign(3, TestFunctionSpec::ball());
  plan.holder.assign(3, Rational(0));
  try {
    run_sweep(plan);
    FAIL("expected an admissibility error");
  } catch (const AdmissibilityError& e) {
    CHECK(e.lambda() == 3);
  }
  plan.lambdas = {4, 2};
  CHECK_THROWS_AS(run_sweep(plan), ValidationError);
  plan.lambdas = {2, 4};
  plan.holder.assign(2, Rational(0));
  CHECK_THROWS_AS(run_sweep(plan), ValidationError);
  plan.holder.assign(3, Rational(0));
  plan.options.limits.max_points = 50;
  CHECK_THROWS_AS(run_sweep(plan), CapacityError);
}

TEST_CASE("admissible subset keeps order") {
  CHECK(admissible_subset(catalog_graph("K3"), 5, {9, 8, 3, 2}) == std::vector<std::int64_t>{8, 2});
}

TEST_CASE("probe identities on small radii") {
  EvalOptions opts;
  const std::vector<std::int64_t> ls{2, 4, 6, 8, 10};
  const auto S = TestFunctionSpec::sphere();
  const auto D = TestFunctionSpec::delta();
  const ProbeResult c4 = necessary_condition_probe(catalog_graph("C4"), 5, {S, D, S, D}, ls, opts);
  const ProbeResult c4t = necessary_condition_probe(catalog_graph("C4t"), 5, {S, D, S, D}, ls, opts);
  REQUIRE(c4.table.rows.size() == ls.size());
  REQUIRE(c4t.table.rows.size() == ls.size());
  for (std::size_t i = 0; i < ls.size(); ++i) {
    const double n = static_cast<double>(sphere_cardinality(5, ls[i]));
    CHECK(c4.table.rows[i].form_value * static_cast<double>(c4.table.rows[i].n_config) ==
          doctest::Approx(n * n).epsilon(1e-14));
    const double pairs = static_cast<double>(oracle::anchored_count(catalog_graph("K3"), 5, ls[i]));
    CHECK(c4t.table.rows[i].form_value * static_cast<double>(c4t.table.rows[i].n_config) ==
          doctest::Approx(pairs).epsilon(1e-14));
  }
  CHECK_THROWS_AS(necessary_condition_probe(catalog_graph("K3"), 5, {D, D, D}, ls, opts), ZeroForm);
  CHECK_THROWS_AS(necessary_condition_probe(catalog_graph("K3"), 5, {S, S, S}, {1, 3, 5}, opts), ZeroForm);
}

TEST_CASE("counterexample detector") {
  const HolderPoint corner{Rational(0), Rational(3, 4), Rational(0), Rational(3, 4)};
  const auto bad = make_counterexample_report("C4", corner, -1.5, Rational(-7, 4));
  CHECK(bad.violation);
  CHECK(bad.margin == doctest::Approx(0.25));
  const auto ok = make_counterexample_report("C4", corner, -7.0 / 4.0 - 1.0, Rational(-7, 4));
  CHECK_FALSE(ok.violation);
  const std::string j = report_to_json(ok);
  for (const char* key : {"\"graph\"", "\"corner\"", "\"measured_slope\"", "\"conjectured_bound_slope\"",
                          "\"violation\"", "\"margin\""}) {
    CHECK(j.find(key) != std::string::npos);
  }
}

TEST_CASE("report emission") {
  const auto dir = scratch("report");
  CHECK_THROWS_AS(emit_report({}, dir.string(), 0.0), ValidationError);
  emit_report({{"a.csv", "x\n", "{\"k\":1}"}}, dir.string(), 0.5, "{\"extra\":true}");
  CHECK(std::filesystem::exists(dir / "a.csv"));
  std::ifstream m(dir / "manifest.json");
  std::string text((std::istreambuf_iterator<char>(m)), std::istreambuf_iterator<char>());
  CHECK(text.find("library_version") != std::string::npos);
  CHECK(text.find("wall_clock_seconds") != std::string::npos);
  CHECK(text.find("\"extra\"") != std::string::npos);
  std::filesystem::remove_all(dir);
}
