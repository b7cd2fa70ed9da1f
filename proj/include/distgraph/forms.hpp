#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "distgraph/function.hpp"
#include "distgraph/graph.hpp"
#include "distgraph/lattice.hpp"

namespace distgraph {

enum class NormalizationMode { Unnormalized, ExactCount };

// ShapeOrbits sums over signed-permutation orbits of anchored configurations and
// needs every input to be invariant under that group.
enum class Strategy { Auto, GenericBacktracking, TreeMessagePassing, ChainConvolution, ShapeOrbits };

std::string to_string(Strategy s);
Strategy parse_strategy(const std::string& s);
std::string to_string(NormalizationMode m);

struct EvalOptions {
  // orbit reduction for invariant inputs; off forces the plain code paths
  bool use_symmetry = true;
  EnumerationLimits limits;
};

struct ConfigurationCount {
  std::string graph;
  int dimension = 0;
  std::int64_t radius = 0;
  Count count = 0;
};

struct FormValue {
  double value = 0.0;
  Strategy strategy_used = Strategy::Auto;
  NormalizationMode normalization = NormalizationMode::ExactCount;
  double raw = 0.0;
  // N_G(lambda); filled in ExactCount mode only
  Count n_config = 0;
  std::vector<std::string> warnings;
};

// Number of completions of an anchored vertex. Disconnected graphs count as the
// product over components, each anchored at its smallest vertex.
ConfigurationCount count_configurations(const DistanceGraph& g, int d, std::int64_t lambda,
                                        const EvalOptions& opts = {});

std::vector<std::int64_t> admissible_radii(const DistanceGraph& g, int d, std::int64_t lo, std::int64_t hi,
                                           const EvalOptions& opts = {});

FormValue evaluate_form(const DistanceGraph& g, std::int64_t lambda, const std::vector<FunctionOnLattice>& fns,
                        NormalizationMode mode, Strategy strategy = Strategy::Auto, const EvalOptions& opts = {});

FunctionOnLattice spherical_average(const FunctionOnLattice& f, std::int64_t lambda,
                                    const EnumerationLimits& limits = {});

// pinned is a 0-based vertex; fns holds the functions of the other vertices in
// increasing vertex order
FunctionOnLattice operator_apply(const DistanceGraph& g, int pinned, std::int64_t lambda,
                                 const std::vector<FunctionOnLattice>& fns, NormalizationMode mode,
                                 const EvalOptions& opts = {});

struct WalkCounts {
  PointSet points;
  std::vector<Count> counts;
  Count at(std::span<const Coord> z) const;
};

// t(z) = number of ordered tuples of shell points summing to z
WalkCounts cycle_walk_counts(int d, std::int64_t lambda, int steps, const EnumerationLimits& limits = {});

}  // namespace distgraph
