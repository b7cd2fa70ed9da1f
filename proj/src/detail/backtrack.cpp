// Generic backtracking over vertex assignments.
//
// The unassigned vertex set is split into connected components whenever the
// assignment decouples it, otherwise the vertex with the smallest estimated
// candidate set is assigned next. Candidates come either from scanning the
// vertex's support or from the pruned shell-intersection walk around its
// assigned neighbors.

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <optional>

#include "detail/accumulate.hpp"
#include "detail/engines.hpp"
#include "detail/shell.hpp"

namespace distgraph::detail {
namespace {

struct Plan {
  bool split = false;
  std::vector<std::uint32_t> parts;
  int v = -1;
  std::vector<int> nbrs;
  std::uint32_t rest = 0;
  bool scan_support = false;
};

template <class V>
class Backtracker {
 public:
  Backtracker(const DistanceGraph& g, int d, std::int64_t lambda, const std::vector<const FunctionOnLattice*>& fns)
      : g_(g), d_(d), lambda_(lambda), fns_(fns), plans_(std::size_t{1} << g.vertex_count()) {
    shell_size_ = static_cast<double>(to_long_double(sphere_cardinality(d, lambda)));
    for (int v = 0; v < g.vertex_count(); ++v) {
      nbr_mask_.push_back(0);
      for (int w : g.neighbors(v)) nbr_mask_.back() |= 1u << w;
    }
  }

  V run() {
    if (shell_size_ == 0 && !g_.edges().empty()) return V(0);
    return sum((1u << g_.vertex_count()) - 1);
  }

 private:
  double support_estimate(int v) const {
    return fns_[v] ? static_cast<double>(fns_[v]->support_size()) : std::numeric_limits<double>::infinity();
  }

  double candidate_estimate(int v, int assigned) const {
    const double supp = support_estimate(v);
    if (assigned == 0) return supp;
    const double shell = std::max(1.0, shell_size_ / std::pow(static_cast<double>(std::max<std::int64_t>(lambda_, 2)), assigned - 1));
    return std::min(supp, shell);
  }

  std::vector<std::uint32_t> split_components(std::uint32_t U) const {
    std::vector<std::uint32_t> parts;
    std::uint32_t left = U;
    while (left) {
      std::uint32_t comp = left & (~left + 1);
      std::uint32_t frontier = comp;
      while (frontier) {
        const int v = std::countr_zero(frontier);
        frontier &= frontier - 1;
        const std::uint32_t grow = nbr_mask_[v] & U & ~comp;
        comp |= grow;
        frontier |= grow;
      }
      parts.push_back(comp);
      left &= ~comp;
    }
    return parts;
  }

  const Plan& plan(std::uint32_t U) {
    auto& slot = plans_[U];
    if (slot) return *slot;
    Plan p;
    auto parts = split_components(U);
    if (parts.size() > 1) {
      p.split = true;
      p.parts = parts;
    } else {
      double best = std::numeric_limits<double>::infinity();
      int best_assigned = -1;
      for (std::uint32_t m = U; m; m &= m - 1) {
        const int v = std::countr_zero(m);
        const int assigned = std::popcount(nbr_mask_[v] & ~U);
        const double est = candidate_estimate(v, assigned);
        if (p.v < 0 || est < best || (est == best && assigned > best_assigned)) {
          best = est;
          best_assigned = assigned;
          p.v = v;
        }
      }
      if (!std::isfinite(best)) throw ValidationError("component without a finitely supported function");
      for (int w : g_.neighbors(p.v)) {
        if (!(U >> w & 1u)) p.nbrs.push_back(w);
      }
      p.rest = U & ~(1u << p.v);
      const double supp = support_estimate(p.v);
      p.scan_support = p.nbrs.empty() || supp <= 4.0 * candidate_estimate(p.v, static_cast<int>(p.nbrs.size()));
      if (!fns_[p.v]) p.scan_support = false;
    }
    slot = std::move(p);
    return *slot;
  }

  V sum(std::uint32_t U) {
    if (U == 0) return V(1);
    const Plan& p = plan(U);
    if (p.split) {
      V prod(1);
      for (std::uint32_t part : p.parts) {
        const V s = sum(part);
        if (s == V(0)) return V(0);
        prod *= s;
      }
      return prod;
    }
    Accumulator<V> acc;
    const int v = p.v;
    const FunctionOnLattice* f = fns_[v];
    Coord* x = pos_[v].data();
    if (p.scan_support) {
      const PointSet& supp = f->support();
      for (std::size_t i = 0; i < supp.size(); ++i) {
        auto y = supp[i];
        bool ok = true;
        for (int w : p.nbrs) {
          if (squared_distance(y, {pos_[w].data(), static_cast<std::size_t>(d_)}) != lambda_) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        std::copy(y.begin(), y.end(), x);
        const V r = sum(p.rest);
        if (r != V(0)) acc.add(static_cast<V>(f->values()[i]) * r);
      }
      return acc.value();
    }
    ShellQuery q;
    q.reset(d_, lambda_, pos_[p.nbrs[0]].data());
    for (std::size_t j = 1; j < p.nbrs.size(); ++j) q.add_center(pos_[p.nbrs[j]].data());
    if (f) q.set_bounds(f->bbox_lo().data(), f->bbox_hi().data());
    const std::uint32_t rest = p.rest;
    enumerate_shell(q, [&](const Coord* y) {
      double fy = 1.0;
      if (f) {
        fy = f->at({y, static_cast<std::size_t>(d_)});
        if (fy == 0.0) return;
      }
      std::copy(y, y + d_, x);
      const V r = sum(rest);
      if (r != V(0)) acc.add(static_cast<V>(fy) * r);
    });
    return acc.value();
  }

  const DistanceGraph& g_;
  int d_;
  std::int64_t lambda_;
  const std::vector<const FunctionOnLattice*>& fns_;
  std::vector<std::optional<Plan>> plans_;
  std::vector<std::uint32_t> nbr_mask_;
  double shell_size_ = 0;
  std::array<std::array<Coord, kMaxDim>, 16> pos_{};
};

}  // namespace

double backtrack_eval(const DistanceGraph& g, int d, std::int64_t lambda,
                      const std::vector<const FunctionOnLattice*>& fns) {
  Backtracker<double> b(g, d, lambda, fns);
  return b.run();
}

Count backtrack_count(const DistanceGraph& g, int d, std::int64_t lambda) {
  const FunctionOnLattice anchor = FunctionOnLattice::delta(d);
  std::vector<const FunctionOnLattice*> fns(g.vertex_count(), nullptr);
  for (const auto& comp : g.components()) fns[comp.front()] = &anchor;
  Backtracker<Count> b(g, d, lambda, fns);
  return b.run();
}

}  // namespace distgraph::detail
