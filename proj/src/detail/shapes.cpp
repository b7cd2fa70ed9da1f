// Orbit-reduced sums over anchored configurations ("shapes").
//
// With the anchor at the origin, every configuration is a tuple of positions.
// Tuples are generated one vertex at a time in canonical position relative to
// the stabilizer of the vertices placed so far, so each signed-permutation orbit
// is visited exactly once and weighted by its size. For invariant inputs the
// form is a sum over shapes of orbit size times the correlation
// sum_x prod_i f_i(x + y_i).

#include <algorithm>
#include <memory>
#include <string>
#include <unordered_map>

#include "detail/accumulate.hpp"
#include "detail/dense_grid.hpp"
#include "detail/engines.hpp"
#include "detail/shell.hpp"
#include "distgraph/symmetry.hpp"

namespace distgraph::detail {
namespace {

struct Layout {
  std::vector<int> order;
  std::vector<std::vector<int>> earlier;
};

Layout make_layout(const DistanceGraph& g, const std::vector<int>& comp, int anchor) {
  Layout l;
  std::vector<char> placed(g.vertex_count(), 0);
  l.order.push_back(anchor);
  l.earlier.emplace_back();
  placed[anchor] = 1;
  while (l.order.size() < comp.size()) {
    int best = -1, best_links = 0;
    for (int v : comp) {
      if (placed[v]) continue;
      int links = 0;
      for (int w : g.neighbors(v)) links += placed[w];
      if (links > best_links) {
        best = v;
        best_links = links;
      }
    }
    std::vector<int> e;
    for (int w : g.neighbors(best)) {
      if (placed[w]) e.push_back(w);
    }
    l.order.push_back(best);
    l.earlier.push_back(e);
    placed[best] = 1;
  }
  return l;
}

template <class V>
class ShapeWalker {
 public:
  ShapeWalker(const DistanceGraph& g, int d, std::int64_t lambda, const std::vector<int>& comp, int anchor,
              const std::vector<const FunctionOnLattice*>* fns, const EnumerationLimits& limits)
      : d_(d), lambda_(lambda), comp_(comp), anchor_(anchor), fns_(fns),
        layout_(make_layout(g, comp, anchor)), group_(hyperoctahedral_order(d)) {
    if (fns_) {
      const FunctionOnLattice& fa = *(*fns_)[anchor];
      lo_.resize(g.vertex_count());
      hi_.resize(g.vertex_count());
      grids_.resize(g.vertex_count());
      std::uint64_t budget = limits.max_points;
      for (int v : comp_) {
        const FunctionOnLattice& f = *(*fns_)[v];
        if (f.support_size() == 0) empty_ = true;
        lo_[v].resize(d);
        hi_[v].resize(d);
        for (int i = 0; i < d; ++i) {
          lo_[v][i] = f.bbox_lo()[i] - fa.bbox_hi()[i];
          hi_[v][i] = f.bbox_hi()[i] - fa.bbox_lo()[i];
        }
        if (v == anchor || empty_) continue;
        std::uint64_t cells = 1;
        for (int i = 0; i < d && cells <= budget; ++i) cells *= static_cast<std::uint64_t>(f.bbox_hi()[i] - f.bbox_lo()[i] + 1);
        if (cells <= budget) {
          grids_[v] = std::make_unique<DenseGrid>(DenseGrid::of(f, budget));
          budget -= cells;
        }
      }
    }
  }

  V run() {
    if (empty_) return V(0);
    pos_[anchor_].fill(0);
    walk(1, BlockPartition::full(d_));
    return acc_.value();
  }

 private:
  V correlation() const {
    if (!fns_) return V(1);
    const FunctionOnLattice& fa = *(*fns_)[anchor_];
    Compensated acc;
    std::array<Coord, kMaxDim> z{};
    const PointSet& sa = fa.support();
    for (std::size_t i = 0; i < sa.size(); ++i) {
      auto x = sa[i];
      double prod = fa.values()[i];
      for (std::size_t j = 1; j < layout_.order.size() && prod != 0.0; ++j) {
        const int v = layout_.order[j];
        for (int t = 0; t < d_; ++t) z[t] = x[t] + pos_[v][t];
        prod *= grids_[v] ? grids_[v]->at(z.data()) : (*fns_)[v]->at({z.data(), static_cast<std::size_t>(d_)});
      }
      if (prod != 0.0) acc.add(prod);
    }
    if constexpr (std::is_same_v<V, double>) {
      return acc.value();
    } else {
      return static_cast<V>(acc.value());
    }
  }

  // completions of the last vertex around two placed neighbors, keyed by the
  // canonical form of their difference
  Count pair_completions(const Coord* a, const Coord* b) {
    std::array<Coord, kMaxDim> diff{}, key{};
    for (int t = 0; t < d_; ++t) diff[t] = b[t] - a[t];
    canonicalize({diff.data(), static_cast<std::size_t>(d_)}, key.data());
    std::string k(reinterpret_cast<const char*>(key.data()), sizeof(Coord) * d_);
    auto it = pair_memo_.find(k);
    if (it != pair_memo_.end()) return it->second;
    std::array<Coord, kMaxDim> origin{};
    ShellQuery q;
    q.reset(d_, lambda_, origin.data());
    q.add_center(key.data());
    Count n = 0;
    enumerate_shell(q, [&](const Coord*) { ++n; });
    pair_memo_.emplace(std::move(k), n);
    return n;
  }

  void walk(std::size_t level, const BlockPartition& part) {
    if (!fns_ && level + 1 == layout_.order.size() && layout_.earlier[level].size() <= 2) {
      // every completion of the prefix, weighted by the prefix orbit
      const auto& e = layout_.earlier[level];
      const Count n = e.size() == 1 ? shell_count() : pair_completions(pos_[e[0]].data(), pos_[e[1]].data());
      if constexpr (std::is_same_v<V, Count>) {
        acc_.add(static_cast<Count>(group_ / part.stabilizer_order()) * n);
      }
      return;
    }
    if (level == layout_.order.size()) {
      const V c = correlation();
      if (c != V(0)) acc_.add(static_cast<V>(group_ / part.stabilizer_order()) * c);
      return;
    }
    const int v = layout_.order[level];
    const auto& e = layout_.earlier[level];
    ShellQuery q;
    q.reset(d_, lambda_, pos_[e[0]].data());
    for (std::size_t j = 1; j < e.size(); ++j) q.add_center(pos_[e[j]].data());
    if (fns_) q.set_bounds(lo_[v].data(), hi_[v].data());
    q.blocks = &part;
    enumerate_shell(q, [&](const Coord* y) {
      std::copy(y, y + d_, pos_[v].data());
      walk(level + 1, part.refine(y));
    });
  }

  Count shell_count() {
    if (shell_count_ < 0) shell_count_ = static_cast<long long>(sphere_cardinality(d_, lambda_));
    return static_cast<Count>(shell_count_);
  }

  int d_;
  std::int64_t lambda_;
  long long shell_count_ = -1;
  std::unordered_map<std::string, Count> pair_memo_;
  const std::vector<int>& comp_;
  int anchor_;
  const std::vector<const FunctionOnLattice*>* fns_;
  Layout layout_;
  std::uint64_t group_;
  bool empty_ = false;
  std::vector<Point> lo_, hi_;
  std::vector<std::unique_ptr<DenseGrid>> grids_;
  std::array<std::array<Coord, kMaxDim>, 16> pos_{};
  Accumulator<V> acc_;
};

}  // namespace

Count shape_orbit_count(const DistanceGraph& g, int d, std::int64_t lambda) {
  Count total = 1;
  for (const auto& comp : g.components()) {
    ShapeWalker<Count> w(g, d, lambda, comp, comp.front(), nullptr, {});
    total *= w.run();
    if (total == 0) break;
  }
  return total;
}

double shape_orbit_eval(const DistanceGraph& g, int d, std::int64_t lambda,
                        const std::vector<const FunctionOnLattice*>& fns, const EnumerationLimits& limits) {
  double total = 1.0;
  for (const auto& comp : g.components()) {
    int anchor = comp.front();
    for (int v : comp) {
      if (fns[v]->support_size() < fns[anchor]->support_size()) anchor = v;
    }
    ShapeWalker<double> w(g, d, lambda, comp, anchor, &fns, limits);
    total *= w.run();
    if (total == 0.0) break;
  }
  return total;
}

}  // namespace distgraph::detail
