#include "distgraph/forms.hpp"

#include <algorithm>

#include "detail/accumulate.hpp"
#include "detail/engines.hpp"
#include "distgraph/errors.hpp"

namespace distgraph {

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::Auto: return "auto";
    case Strategy::GenericBacktracking: return "backtracking";
    case Strategy::TreeMessagePassing: return "tree";
    case Strategy::ChainConvolution: return "chain";
    case Strategy::ShapeOrbits: return "shapes";
  }
  return "auto";
}

Strategy parse_strategy(const std::string& s) {
  for (Strategy t : {Strategy::Auto, Strategy::GenericBacktracking, Strategy::TreeMessagePassing,
                     Strategy::ChainConvolution, Strategy::ShapeOrbits}) {
    if (to_string(t) == s) return t;
  }
  throw ValidationError("unknown strategy '" + s + "' (auto, backtracking, tree, chain, shapes)");
}

std::string to_string(NormalizationMode m) { return m == NormalizationMode::ExactCount ? "exact" : "raw"; }

namespace {

void validate_radius(std::int64_t lambda) {
  if (lambda < 1) throw ValidationError("lambda must be a positive integer, got " + std::to_string(lambda));
}

void validate_count_dimension(int d) {
  validate_dimension(d);
  if (d < 2) throw ValidationError("configuration counting needs d >= 2");
}

Count normalizer(const DistanceGraph& g, int d, std::int64_t lambda, const EvalOptions& opts) {
  const Count n = count_configurations(g, d, lambda, opts).count;
  if (n == 0) {
    throw AdmissibilityError("graph " + g.name() + " has no configuration at lambda=" + std::to_string(lambda) +
                                 " in d=" + std::to_string(d),
                             lambda);
  }
  return n;
}

double as_double(Count c) { return static_cast<double>(to_long_double(c)); }

}  // namespace

ConfigurationCount count_configurations(const DistanceGraph& g, int d, std::int64_t lambda, const EvalOptions& opts) {
  validate_count_dimension(d);
  validate_radius(lambda);
  if (sphere_cardinality(d, lambda) > opts.limits.max_points) {
    throw CapacityError("shell at lambda=" + std::to_string(lambda) + " exceeds the point budget");
  }
  ConfigurationCount c;
  c.graph = g.name();
  c.dimension = d;
  c.radius = lambda;
  if (g.is_forest()) {
    // every edge of a forest picks its shell point independently
    const Count s = sphere_cardinality(d, lambda);
    c.count = 1;
    for (std::size_t e = 0; e < g.edges().size(); ++e) c.count *= s;
  } else {
    c.count = opts.use_symmetry ? detail::shape_orbit_count(g, d, lambda) : detail::backtrack_count(g, d, lambda);
  }
  return c;
}

std::vector<std::int64_t> admissible_radii(const DistanceGraph& g, int d, std::int64_t lo, std::int64_t hi,
                                           const EvalOptions& opts) {
  if (lo < 0 || hi < 0) throw ValidationError("radius range bounds must be non-negative");
  std::vector<std::int64_t> out;
  for (std::int64_t lambda = std::max<std::int64_t>(lo, 1); lambda <= hi; ++lambda) {
    if (count_configurations(g, d, lambda, opts).count > 0) out.push_back(lambda);
  }
  return out;
}

FormValue evaluate_form(const DistanceGraph& g, std::int64_t lambda, const std::vector<FunctionOnLattice>& fns,
                        NormalizationMode mode, Strategy strategy, const EvalOptions& opts) {
  validate_radius(lambda);
  const int k = g.vertex_count();
  if (static_cast<int>(fns.size()) != k) {
    throw DimensionMismatch("graph " + g.name() + " has " + std::to_string(k) + " vertices but " +
                            std::to_string(fns.size()) + " functions were given");
  }
  const int d = fns.front().dim();
  for (const auto& f : fns) {
    if (f.dim() != d) throw DimensionMismatch("input functions live in different dimensions");
  }
  validate_count_dimension(d);

  FormValue out;
  out.normalization = mode;
  if (!g.is_connected()) out.warnings.push_back("graph is disconnected; value is the product over components");

  const bool invariant = std::all_of(fns.begin(), fns.end(), [](const auto& f) { return f.is_invariant(); });
  const bool symmetric = opts.use_symmetry && invariant;
  Strategy s = strategy;
  if (s == Strategy::Auto) {
    if (g.is_labelled_path()) {
      s = Strategy::ChainConvolution;
    } else if (g.is_forest()) {
      s = Strategy::TreeMessagePassing;
    } else if (symmetric) {
      s = Strategy::ShapeOrbits;
    } else {
      s = Strategy::GenericBacktracking;
    }
  }
  if (s == Strategy::TreeMessagePassing && !g.is_forest()) {
    throw StrategyUnsupported("tree message passing needs an acyclic graph");
  }
  if (s == Strategy::ChainConvolution && !g.is_labelled_path()) {
    throw StrategyUnsupported("chain convolution needs the path graph with edges (i, i+1)");
  }
  if (s == Strategy::ShapeOrbits && !invariant) {
    throw StrategyUnsupported("orbit summation needs inputs invariant under signed coordinate permutations");
  }
  out.strategy_used = s;

  Count n = 0;
  if (mode == NormalizationMode::ExactCount) {
    n = normalizer(g, d, lambda, opts);
    out.n_config = n;
  }

  std::vector<const FunctionOnLattice*> ptrs;
  for (const auto& f : fns) ptrs.push_back(&f);
  const bool empty = std::any_of(fns.begin(), fns.end(), [](const auto& f) { return f.support_size() == 0; });
  double raw = 0.0;
  if (!empty && sphere_cardinality(d, lambda) > 0) {
    switch (s) {
      case Strategy::GenericBacktracking: raw = detail::backtrack_eval(g, d, lambda, ptrs); break;
      case Strategy::TreeMessagePassing: raw = detail::tree_eval(g, d, lambda, ptrs, symmetric, opts.limits); break;
      case Strategy::ChainConvolution: raw = detail::chain_eval(g, d, lambda, ptrs, symmetric, opts.limits); break;
      case Strategy::ShapeOrbits: raw = detail::shape_orbit_eval(g, d, lambda, ptrs, opts.limits); break;
      case Strategy::Auto: break;
    }
  } else if (!empty && g.edges().empty()) {
    raw = detail::backtrack_eval(g, d, lambda, ptrs);
  }
  out.raw = raw;
  out.value = mode == NormalizationMode::ExactCount ? raw / as_double(n) : raw;
  return out;
}

FunctionOnLattice spherical_average(const FunctionOnLattice& f, std::int64_t lambda, const EnumerationLimits& limits) {
  validate_radius(lambda);
  const int d = f.dim();
  const PointSet shell = enumerate_sphere(d, lambda, limits);
  if (shell.empty()) {
    throw AdmissibilityError("empty shell at lambda=" + std::to_string(lambda) + " in d=" + std::to_string(d), lambda);
  }
  const double inv = 1.0 / static_cast<double>(shell.size());
  detail::PointAccumulator<double> acc(d, limits.max_points);
  std::array<Coord, kMaxDim> z{};
  for (std::size_t i = 0; i < f.support_size(); ++i) {
    auto y = f.support()[i];
    const double v = f.values()[i] * inv;
    for (std::size_t j = 0; j < shell.size(); ++j) {
      auto s = shell[j];
      for (int t = 0; t < d; ++t) z[t] = y[t] + s[t];
      acc.add({z.data(), static_cast<std::size_t>(d)}, v);
    }
  }
  return FunctionOnLattice::from_points(acc.points(), acc.values());
}

FunctionOnLattice operator_apply(const DistanceGraph& g, int pinned, std::int64_t lambda,
                                 const std::vector<FunctionOnLattice>& fns, NormalizationMode mode,
                                 const EvalOptions& opts) {
  validate_radius(lambda);
  const int k = g.vertex_count();
  if (pinned < 0 || pinned >= k) throw ValidationError("pinned vertex out of range");
  if (static_cast<int>(fns.size()) != k - 1) {
    throw DimensionMismatch("operator needs " + std::to_string(k - 1) + " functions, got " + std::to_string(fns.size()));
  }
  if (g.neighbors(pinned).empty()) {
    throw ValidationError("pinned vertex is isolated; the operator output would not be finitely supported");
  }
  const int d = fns.front().dim();
  for (const auto& f : fns) {
    if (f.dim() != d) throw DimensionMismatch("input functions live in different dimensions");
  }
  validate_count_dimension(d);
  const double n = mode == NormalizationMode::ExactCount ? as_double(normalizer(g, d, lambda, opts)) : 1.0;

  std::vector<const FunctionOnLattice*> ptrs(k, nullptr);
  for (int v = 0, j = 0; v < k; ++v) {
    if (v != pinned) ptrs[v] = &fns[j++];
  }
  // any valid pinned position sits on a shell around a neighbor's support point
  int u = -1;
  for (int w : g.neighbors(pinned)) {
    if (u < 0 || ptrs[w]->support_size() < ptrs[u]->support_size()) u = w;
  }
  const PointSet shell = enumerate_sphere(d, lambda, opts.limits);
  detail::PointAccumulator<double> cand(d, opts.limits.max_points);
  std::array<Coord, kMaxDim> z{};
  for (std::size_t i = 0; i < ptrs[u]->support_size(); ++i) {
    auto y = ptrs[u]->support()[i];
    for (std::size_t j = 0; j < shell.size(); ++j) {
      for (int t = 0; t < d; ++t) z[t] = y[t] + shell[j][t];
      cand.add({z.data(), static_cast<std::size_t>(d)}, 1.0);
    }
  }
  const FunctionOnLattice where = FunctionOnLattice::indicator(cand.points());
  std::vector<double> values(where.support_size(), 0.0);
  if (g.is_connected() && g.is_forest()) {
    ptrs[pinned] = &where;
    values = detail::tree_root_values(g, d, lambda, ptrs, pinned, opts.limits);
  } else {
    for (std::size_t i = 0; i < where.support_size(); ++i) {
      const FunctionOnLattice delta = FunctionOnLattice::delta_at(where.support().point(i));
      ptrs[pinned] = &delta;
      values[i] = detail::backtrack_eval(g, d, lambda, ptrs);
    }
  }
  for (double& v : values) v /= n;
  return FunctionOnLattice::from_points(where.support(), values);
}

Count WalkCounts::at(std::span<const Coord> z) const {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (std::equal(z.begin(), z.end(), points[i].begin())) return counts[i];
  }
  return 0;
}

WalkCounts cycle_walk_counts(int d, std::int64_t lambda, int steps, const EnumerationLimits& limits) {
  validate_radius(lambda);
  if (steps < 1) throw ValidationError("steps must be positive");
  const PointSet shell = enumerate_sphere(d, lambda, limits);
  if (shell.empty()) {
    throw AdmissibilityError("empty shell at lambda=" + std::to_string(lambda), lambda);
  }
  WalkCounts t;
  t.points = shell;
  t.counts.assign(shell.size(), 1);
  std::array<Coord, kMaxDim> z{};
  for (int step = 2; step <= steps; ++step) {
    detail::PointAccumulator<Count> next(d, limits.max_points);
    for (std::size_t i = 0; i < t.points.size(); ++i) {
      auto y = t.points[i];
      for (std::size_t j = 0; j < shell.size(); ++j) {
        for (int c = 0; c < d; ++c) z[c] = y[c] + shell[j][c];
        next.add({z.data(), static_cast<std::size_t>(d)}, t.counts[i]);
      }
    }
    t.points = next.points();
    t.counts = next.values();
  }
  // lexicographic order for stable output
  std::vector<std::size_t> order(t.points.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    auto pa = t.points[a];
    auto pb = t.points[b];
    return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
  });
  WalkCounts sorted;
  sorted.points = PointSet(d);
  for (std::size_t i : order) {
    sorted.points.push_back(t.points[i]);
    sorted.counts.push_back(t.counts[i]);
  }
  return sorted;
}

}  // namespace distgraph
