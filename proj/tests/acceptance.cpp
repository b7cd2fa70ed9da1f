// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.
// Run with criterion numbers as arguments to select a subset.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "distgraph/forms.hpp"
#include "distgraph/lab.hpp"
#include "distgraph/region.hpp"
#include "distgraph/symmetry.hpp"
#include "oracles.hpp"

using namespace distgraph;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::string failures;

  void fail(const std::string& why) {
    pass = false;
    failures += (failures.empty() ? "" : "; ") + why;
  }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

EvalOptions plain() {
  EvalOptions o;
  o.use_symmetry = false;
  return o;
}

void sphere_oracle(Outcome& o) {
  std::size_t checked = 0;
  for (int d = 1; d <= 6; ++d) {
    std::map<std::int64_t, std::vector<Point>> by_norm;
    oracle::for_box(d, 7, [&](const Point& x) {
      const auto n = oracle::norm2(x);
      if (n <= 60) by_norm[n].push_back(x);
    });
    for (std::int64_t lambda = 0; lambda <= 60; ++lambda) {
      const PointSet s = enumerate_sphere(d, lambda);
      std::set<Point> got, want(by_norm[lambda].begin(), by_norm[lambda].end());
      for (std::size_t i = 0; i < s.size(); ++i) got.insert(s.point(i));
      if (got != want || got.size() != s.size()) {
        o.fail("d=" + std::to_string(d) + " lambda=" + std::to_string(lambda));
      }
      ++checked;
    }
  }
  if (o.pass) o.detail << checked << " shells equal to the box filter";
}

void jacobi(Outcome& o) {
  for (std::int64_t n = 1; n <= 100; ++n) {
    if (sphere_cardinality(4, n) != static_cast<Count>(oracle::jacobi_four_squares(n))) {
      o.fail("n=" + std::to_string(n));
    }
  }
  if (o.pass) o.detail << "r_4(n) = 8 sigma*(n) for n <= 100";
}

void strategy_agreement(Outcome& o) {
  const std::vector<std::string> graphs{"P1", "P2", "P3", "K3", "K4", "C4", "C4t", "K3t", "Y"};
  std::mt19937_64 rng(20240101);
  int nonzero = 0, compared = 0;
  for (int c = 0; c < 50; ++c) {
    const DistanceGraph g = catalog_graph(graphs[c % graphs.size()]);
    const int d = 4 + (c / 9) % 2;
    const auto adm = admissible_radii(g, d, 1, 6);
    const std::int64_t lambda = adm[rng() % adm.size()];
    const bool invariant = c % 3 == 2;
    std::vector<FunctionOnLattice> fns;
    for (int v = 0; v < g.vertex_count(); ++v) {
      fns.push_back(invariant ? oracle::random_invariant_function(rng, d, 2, 0.3)
                              : oracle::random_function(rng, d, 2, 0.2));
    }
    std::vector<std::pair<Strategy, EvalOptions>> runs{{Strategy::GenericBacktracking, plain()},
                                                       {Strategy::GenericBacktracking, EvalOptions{}}};
    if (g.is_forest()) {
      runs.push_back({Strategy::TreeMessagePassing, plain()});
      runs.push_back({Strategy::TreeMessagePassing, EvalOptions{}});
    }
    if (g.is_labelled_path()) {
      runs.push_back({Strategy::ChainConvolution, plain()});
      runs.push_back({Strategy::ChainConvolution, EvalOptions{}});
    }
    if (invariant) runs.push_back({Strategy::ShapeOrbits, EvalOptions{}});
    const double ref =
        evaluate_form(g, lambda, fns, NormalizationMode::ExactCount, runs[0].first, runs[0].second).value;
    nonzero += ref != 0.0;
    for (std::size_t i = 1; i < runs.size(); ++i) {
      const double v = evaluate_form(g, lambda, fns, NormalizationMode::ExactCount, runs[i].first, runs[i].second).value;
      ++compared;
      if (!oracle::close(v, ref, 1e-12)) {
        o.fail("case " + std::to_string(c) + " " + g.name() + " " + to_string(runs[i].first));
      }
    }
  }
  if (nonzero < 25) o.fail("only " + std::to_string(nonzero) + " of 50 cases are nonzero");
  if (o.pass) o.detail << "50 cases, " << compared << " strategy pairs, " << nonzero << " nonzero";
}

void normalization(Outcome& o) {
  int checked = 0;
  for (const auto& name : catalog_names()) {
    const DistanceGraph g = catalog_graph(name);
    if (g.vertex_count() > 4) continue;
    // graph eccentricity of the anchor bounds every coordinate by ecc * sqrt(lambda)
    int ecc = 0;
    {
      std::vector<int> dist(g.vertex_count(), -1);
      std::vector<int> queue{0};
      dist[0] = 0;
      for (std::size_t i = 0; i < queue.size(); ++i) {
        for (int w : g.neighbors(queue[i])) {
          if (dist[w] < 0) {
            dist[w] = dist[queue[i]] + 1;
            ecc = std::max(ecc, dist[w]);
            queue.push_back(w);
          }
        }
      }
    }
    for (auto lambda : admissible_radii(g, 5, 1, 10)) {
      const int w = ecc * static_cast<int>(isqrt(lambda));
      std::vector<FunctionOnLattice> fns{FunctionOnLattice::delta(5)};
      const FunctionOnLattice ones = materialize(TestFunctionSpec::ones(w), 5, lambda, {});
      for (int v = 1; v < g.vertex_count(); ++v) fns.push_back(ones);
      const double v = evaluate_form(g, lambda, fns, NormalizationMode::ExactCount).value;
      ++checked;
      if (std::abs(v - 1.0) > 1e-12) o.fail(name + " lambda=" + std::to_string(lambda) + " gives " + fmt(v));
    }
  }
  if (o.pass) o.detail << checked << " (graph, lambda) pairs equal to 1";
}

void triangle_parity(Outcome& o) {
  const DistanceGraph k3 = catalog_graph("K3");
  for (int d = 4; d <= 7; ++d) {
    for (std::int64_t lambda = 1; lambda <= 25; lambda += 2) {
      if (count_configurations(k3, d, lambda).count != 0) {
        o.fail("d=" + std::to_string(d) + " lambda=" + std::to_string(lambda));
      }
    }
  }
  if (o.pass) o.detail << "N_K3 = 0 for odd lambda <= 25, d = 4..7";
}

void sharpness(Outcome& o, const std::string& graph, int d, const HolderPoint& h, const std::vector<std::int64_t>& ls,
               double tol) {
  const SharpnessResult r = sharpness_check(graph, d, h, ls, tol);
  o.detail << (o.detail.tellp() > 0 ? ", " : "") << graph << " slope " << fmt(r.fit.slope) << " vs "
           << format_rational(r.conjectured);
  if (!r.pass) o.fail(graph + " slope " + fmt(r.fit.slope) + " outside " + format_rational(r.conjectured) + " +- " +
                      fmt(tol));
}

void probe(Outcome& o, const std::string& graph, int d, const std::vector<TestFunctionSpec>& a,
           const std::vector<std::int64_t>& ls, double want, double tol, const std::string& label) {
  const ProbeResult r = necessary_condition_probe(catalog_graph(graph), d, a, ls);
  const double s = r.fit.slope;
  o.detail << (o.detail.tellp() > 0 ? ", " : "") << label << " slope " << fmt(s) << " vs " << fmt(want);
  if (std::abs(s - want) > tol) o.fail(label + " slope " + fmt(s) + " outside " + fmt(want) + " +- " + fmt(tol));
}

// ordered pairs of shell points at mutual squared distance lambda, by orbit
Count shell_pairs(int d, std::int64_t lambda) {
  const PointSet s = enumerate_sphere(d, lambda);
  std::set<Point> reps;
  for (std::size_t i = 0; i < s.size(); ++i) reps.insert(canonical_form(s[i]));
  Count total = 0;
  for (const auto& x : reps) {
    std::uint64_t n = 0;
    for (std::size_t j = 0; j < s.size(); ++j) {
      std::int64_t dot = 0;
      for (int t = 0; t < d; ++t) dot += static_cast<std::int64_t>(x[t]) * s[j][t];
      n += 2 * dot == lambda;
    }
    total += static_cast<Count>(orbit_size(x)) * n;
  }
  return total;
}

void counterexample(Outcome& o) {
  const int d = 7;
  const CounterexamplePair p = subgraph_counterexample(d, 10, 40);
  const double want = -(d - 4) / 2.0;
  for (const auto* r : {&p.c4, &p.c4t}) {
    o.detail << (o.detail.tellp() > 0 ? ", " : "") << r->graph << " slope " << fmt(r->measured_slope) << " margin "
             << fmt(r->margin);
    if (std::abs(r->measured_slope - want) > 0.25) o.fail(r->graph + " slope " + fmt(r->measured_slope));
    if (!r->violation) o.fail(r->graph + " reports no violation");
    if (r->conjectured_bound_slope != Rational(-7, 4)) {
      o.fail(r->graph + " bound " + format_rational(r->conjectured_bound_slope));
    }
  }
  for (auto l : p.lambdas) {
    if (l % 2 != 0) o.fail("odd lambda " + std::to_string(l) + " swept");
  }
  if (p.c4_probe.table.rows.size() != p.lambdas.size() || p.c4t_probe.table.rows.size() != p.lambdas.size()) {
    o.fail("probe rows do not cover the shared lambdas");
    return;
  }
  for (std::size_t i = 0; i < p.lambdas.size(); ++i) {
    const auto l = p.lambdas[i];
    const FunctionOnLattice s = materialize(TestFunctionSpec::sphere(), d, l, {});
    const FunctionOnLattice delta = FunctionOnLattice::delta(d);
    const Count n = sphere_cardinality(d, l);
    const Count pairs = shell_pairs(d, l);
    const double c4raw =
        evaluate_form(catalog_graph("C4"), l, {s, delta, s, delta}, NormalizationMode::Unnormalized).raw;
    const double c4traw =
        evaluate_form(catalog_graph("C4t"), l, {s, delta, s, delta}, NormalizationMode::Unnormalized).raw;
    // both sides are far below 2^53, so double equality is integer equality
    if (c4raw != static_cast<double>(n * n)) o.fail("C4 identity at lambda=" + std::to_string(l));
    if (c4traw != static_cast<double>(pairs)) o.fail("C4t identity at lambda=" + std::to_string(l));
    const auto& r4 = p.c4_probe.table.rows[i];
    const auto& r4t = p.c4t_probe.table.rows[i];
    if (!oracle::close(r4.form_value * static_cast<double>(r4.n_config), static_cast<double>(n * n), 1e-15)) {
      o.fail("C4 row identity at lambda=" + std::to_string(l));
    }
    if (!oracle::close(r4t.form_value * static_cast<double>(r4t.n_config), static_cast<double>(pairs), 1e-15)) {
      o.fail("C4t row identity at lambda=" + std::to_string(l));
    }
  }
  o.detail << ", bound -7/4, K4 corner " << to_string(p.corner_in_k4) << ", identities on " << p.lambdas.size()
           << " lambdas";
}

void region_cross_validation(Outcome& o) {
  for (const auto& name : {"P2", "K3", "K3t"}) {
    for (int d : {7, 9}) {
      const auto report = cross_validate(builtin_region(name, d), builtin_halfspaces(name, d), 1000, 1);
      o.detail << (o.detail.tellp() > 0 ? ", " : "") << name << "/d" << d << ": " << report.disagreements.size();
      if (!report.disagreements.empty()) {
        std::ostringstream why;
        why << name << " d=" << d << " " << report.disagreements.size() << " disagreements";
        o.fail(why.str());
        for (const auto& dis : report.disagreements) {
          std::printf("  %s d=%d point (", name, d);
          for (std::size_t i = 0; i < dis.point.size(); ++i) {
            std::printf("%s%s", i ? ", " : "", format_rational(dis.point[i]).c_str());
          }
          std::printf(") hull %s system %s\n", to_string(dis.hull).c_str(), to_string(dis.system).c_str());
        }
      }
    }
  }
}

void duality(Outcome& o) {
  const std::vector<std::string> graphs{"P1", "P2", "K3", "Y"};
  std::mt19937_64 rng(99);
  for (int c = 0; c < 25; ++c) {
    const DistanceGraph g = catalog_graph(graphs[c % graphs.size()]);
    const int d = 3 + c % 2;
    const auto adm = admissible_radii(g, d, 1, 6);
    const std::int64_t lambda = adm[rng() % adm.size()];
    std::vector<FunctionOnLattice> fns;
    for (int v = 0; v < g.vertex_count(); ++v) fns.push_back(oracle::random_function(rng, d, 2, 0.3));
    const int pin = static_cast<int>(rng() % g.vertex_count());
    std::vector<FunctionOnLattice> rest;
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (v != pin) rest.push_back(fns[v]);
    }
    const auto t = operator_apply(g, pin, lambda, rest, NormalizationMode::ExactCount);
    const double lhs = oracle::inner(fns[pin], t);
    const double rhs = evaluate_form(g, lambda, fns, NormalizationMode::ExactCount).value;
    if (!oracle::close(lhs, rhs, 1e-12)) o.fail("case " + std::to_string(c) + " " + g.name());
  }
  if (o.pass) o.detail << "25 cases";
}

void calculators(Outcome& o) {
  const Rational t = Rational(2, 3);
  if (conjectured_exponent(5, {t, t}) != Rational(-5, 6)) o.fail("P1 exponent");
  const HolderPoint corner{Rational(0), Rational(6, 8), Rational(0), Rational(6, 8)};
  if (conjectured_exponent(7, corner) != Rational(-7, 4)) o.fail("K4 corner exponent");
  if (interpolated_exponent(5, Rational(1, 2), Rational(2, 3), Rational(1, 3)) != Rational(-7, 6)) {
    o.fail("interpolation example");
  }
  for (int d = 5; d <= 15; ++d) {
    if (interpolated_exponent(d, 0, Rational(1, 2), Rational(1, 2)) != Rational(-(d - 2), 2)) {
      o.fail("theta -> 0 at d=" + std::to_string(d));
    }
  }
  if (o.pass) o.detail << "-5/6, -7/4, -7/6, -(d-2)/2 exact";
}

}  // namespace

int main(int argc, char** argv) {
  const Rational two3(2, 3);
  const std::vector<std::int64_t> l16_64{16, 24, 32, 40, 48, 56, 64};
  const auto S = TestFunctionSpec::sphere();
  const auto D = TestFunctionSpec::delta();
  std::vector<std::int64_t> even8_24, even8_40;
  for (std::int64_t l = 8; l <= 40; l += 2) {
    if (l <= 24) even8_24.push_back(l);
    even8_40.push_back(l);
  }

  const std::vector<std::pair<int, std::function<void(Outcome&)>>> criteria{
      {1, sphere_oracle},
      {2, jacobi},
      {3, strategy_agreement},
      {4, normalization},
      {5, triangle_parity},
      {6,
       [&](Outcome& o) {
         sharpness(o, "P1", 5, {two3, two3}, l16_64, 0.25);
         sharpness(o, "P2", 5, {two3, two3, two3}, l16_64, 0.25);
       }},
      {7, [&](Outcome& o) { sharpness(o, "K3", 7, {0, 0, 0}, even8_24, 0.40); }},
      {8,
       [&](Outcome& o) {
         probe(o, "P2", 5, {S, D, S}, l16_64, 0.0, 0.15, "P2(S,d,S)");
         probe(o, "P2", 5, {D, S, D}, l16_64, -1.5, 0.25, "P2(d,S,d)");
         probe(o, "K3", 7, {D, S, S}, even8_40, -1.0, 0.25, "K3(d,S,S)");
       }},
      {9, counterexample},
      {10, region_cross_validation},
      {11, duality},
      {12, calculators},
  };

  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  int failed = 0;
  for (const auto& [id, run] : criteria) {
    if (!only.empty() && !only.count(id)) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      run(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.pass;
    std::string text = o.detail.str();
    if (!o.pass) text += (text.empty() ? "" : " | ") + o.failures;
    std::printf("criterion %2d: %s  %s  [%.1fs]\n", id, o.pass ? "PASS" : "FAIL", text.c_str(), secs);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
