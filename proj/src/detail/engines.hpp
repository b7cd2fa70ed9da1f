#pragma once

#include <vector>

#include "distgraph/function.hpp"
#include "distgraph/graph.hpp"
#include "distgraph/lattice.hpp"

namespace distgraph::detail {

// A null entry stands for the constant function 1; every connected component
// then needs at least one finitely supported vertex.
double backtrack_eval(const DistanceGraph& g, int d, std::int64_t lambda,
                      const std::vector<const FunctionOnLattice*>& fns);
Count backtrack_count(const DistanceGraph& g, int d, std::int64_t lambda);

Count shape_orbit_count(const DistanceGraph& g, int d, std::int64_t lambda);
// all fns invariant; dense grids for lookups are capped by limits
double shape_orbit_eval(const DistanceGraph& g, int d, std::int64_t lambda,
                        const std::vector<const FunctionOnLattice*>& fns, const EnumerationLimits& limits);

// g a forest; symmetric requires invariant fns
double tree_eval(const DistanceGraph& g, int d, std::int64_t lambda, const std::vector<const FunctionOnLattice*>& fns,
                 bool symmetric, const EnumerationLimits& limits);
// connected tree rooted at root: value of root's function times incoming
// messages, aligned with the support of fns[root]
std::vector<double> tree_root_values(const DistanceGraph& g, int d, std::int64_t lambda,
                                     const std::vector<const FunctionOnLattice*>& fns, int root,
                                     const EnumerationLimits& limits);

// g a labelled path
double chain_eval(const DistanceGraph& g, int d, std::int64_t lambda, const std::vector<const FunctionOnLattice*>& fns,
                  bool symmetric, const EnumerationLimits& limits);

}  // namespace distgraph::detail
