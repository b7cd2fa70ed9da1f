#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "distgraph/forms.hpp"
#include "distgraph/region.hpp"
#include "distgraph/testfn.hpp"

namespace distgraph {

struct SweepPlan {
  DistanceGraph graph;
  int dimension = 5;
  std::vector<std::int64_t> lambdas;  // strictly increasing, admissible
  std::vector<TestFunctionSpec> functions;
  HolderPoint holder;  // reciprocals 1/p_i, 0 for p = inf
  NormalizationMode normalization = NormalizationMode::ExactCount;
  Strategy strategy = Strategy::Auto;
  EvalOptions options;
  int threads = 1;
};

struct SweepRow {
  std::int64_t lambda = 0;
  Count n_config = 0;
  double form_value = 0.0;
  double norm_product = 0.0;
  double ratio = 0.0;
};

struct SweepTable {
  std::vector<SweepRow> rows;
};

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
  int lambda_count = 0;
};

struct CounterexampleReport {
  std::string graph;
  HolderPoint corner;
  double measured_slope = 0.0;
  Rational conjectured_bound_slope;
  bool violation = false;
  double margin = 0.0;
};

// lambdas the graph admits, in the given order
std::vector<std::int64_t> admissible_subset(const DistanceGraph& g, int d, const std::vector<std::int64_t>& lambdas,
                                            const EvalOptions& opts = {});

SweepTable run_sweep(const SweepPlan& plan);

std::string table_to_csv(const SweepTable& table);
SweepTable table_from_csv(const std::string& text);

// least squares on (ln x, ln y)
FitResult fit_power_law(const std::vector<double>& xs, const std::vector<double>& ys);
FitResult fit_exponent(const SweepTable& table);

struct SharpnessResult {
  FitResult fit;
  Rational conjectured;
  double tolerance = 0.35;
  bool pass = false;
  SweepTable table;
};

// all-balls sweep compared against the conjectured exponent
SharpnessResult sharpness_check(const std::string& graph, int d, const HolderPoint& holder,
                                const std::vector<std::int64_t>& lambdas, double tolerance = 0.35,
                                const EvalOptions& opts = {}, int threads = 1);

struct ProbeResult {
  FitResult fit;  // slope of form_value alone
  SweepTable table;
  std::vector<std::int64_t> skipped;  // lambdas where the form vanished
};

// each spec is sphere or delta; rows with a zero form are skipped, ZeroForm when none remain
ProbeResult necessary_condition_probe(const DistanceGraph& g, int d, const std::vector<TestFunctionSpec>& assignment,
                                      const std::vector<std::int64_t>& lambdas, const EvalOptions& opts = {},
                                      int threads = 1);

CounterexampleReport make_counterexample_report(const std::string& graph, const HolderPoint& corner,
                                                double measured_slope, const Rational& bound_slope);

struct CounterexamplePair {
  int dimension = 7;
  std::vector<std::int64_t> lambdas;
  CounterexampleReport c4;
  CounterexampleReport c4t;
  ProbeResult c4_probe;
  ProbeResult c4t_probe;
  Verdict corner_in_k4 = Verdict::Outside;
  std::string note;
};

// probes (S, delta, S, delta) on C4 and C4t at the K4 corner (0, c, 0, c), c = (d-1)/(d+1)
CounterexamplePair subgraph_counterexample(int d, std::int64_t lmin, std::int64_t lmax, const EvalOptions& opts = {},
                                           int threads = 1);

std::string fit_to_json(const FitResult& fit);
std::string report_to_json(const CounterexampleReport& report);
std::string pair_to_json(const CounterexamplePair& pair);

struct ReportItem {
  std::string file;       // relative name inside the output directory
  std::string contents;
  std::string inputs;     // JSON text describing how the item was produced
};

// writes every item plus manifest.json (inputs, library version, wall-clock seconds)
void emit_report(const std::vector<ReportItem>& items, const std::string& out_dir, double wall_clock_seconds,
                 const std::string& extra_manifest_json = "{}");

}  // namespace distgraph
