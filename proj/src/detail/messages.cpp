// Tree message passing (sparse, keyed by support index) and dense chain
// convolution for labelled paths. In symmetric mode messages are only computed
// at canonical support points and looked up through canonical forms.

#include <algorithm>

#include "detail/accumulate.hpp"
#include "detail/dense_grid.hpp"
#include "detail/engines.hpp"
#include "distgraph/symmetry.hpp"

namespace distgraph::detail {
namespace {

// index of the canonical representative of each support point, -1 when the
// canonical point is not supported (cannot happen for invariant inputs)
std::vector<std::int64_t> canonical_indices(const FunctionOnLattice& f) {
  const std::size_t n = f.support_size();
  std::vector<std::int64_t> out(n);
  std::vector<Coord> c(f.dim());
  const PointSet& s = f.support();
  for (std::size_t i = 0; i < n; ++i) {
    canonicalize(s[i], c.data());
    out[i] = -1;
    if (std::equal(c.begin(), c.end(), s[i].begin())) {
      out[i] = static_cast<std::int64_t>(i);
      continue;
    }
    out[i] = f.find(c);
  }
  return out;
}

class TreeRunner {
 public:
  TreeRunner(const DistanceGraph& g, int d, std::int64_t lambda, const std::vector<const FunctionOnLattice*>& fns,
             bool symmetric, const EnumerationLimits& limits)
      : g_(g), d_(d), lambda_(lambda), fns_(fns), symmetric_(symmetric),
        shell_(enumerate_sphere(d, lambda, limits)), h_(g.vertex_count()), canon_(g.vertex_count()) {}

  // h_root aligned with the support of fns[root]
  const std::vector<double>& solve(int root) {
    std::vector<int> parent(g_.vertex_count(), -2), order;
    std::vector<int> stack{root};
    parent[root] = -1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      order.push_back(v);
      for (int w : g_.neighbors(v)) {
        if (parent[w] == -2) {
          parent[w] = v;
          stack.push_back(w);
        }
      }
    }
    for (int v : order) {
      h_[v] = fns_[v]->values();
      if (symmetric_) canon_[v] = canonical_indices(*fns_[v]);
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const int c = *it;
      if (parent[c] >= 0) absorb(parent[c], c);
    }
    return h_[root];
  }

  double total(int root) {
    const std::vector<double>& h = solve(root);
    const FunctionOnLattice& f = *fns_[root];
    Compensated acc;
    for (std::size_t i = 0; i < h.size(); ++i) {
      if (!symmetric_) {
        acc.add(h[i]);
      } else if (canon_[root][i] == static_cast<std::int64_t>(i)) {
        acc.add(static_cast<double>(orbit_size(f.support()[i])) * h[i]);
      }
    }
    return acc.value();
  }

 private:
  double child_value(int c, std::int64_t idx) const {
    if (idx < 0) return 0.0;
    if (symmetric_) idx = canon_[c][static_cast<std::size_t>(idx)];
    return idx < 0 ? 0.0 : h_[c][static_cast<std::size_t>(idx)];
  }

  // h_v *= message from child c
  void absorb(int v, int c) {
    const FunctionOnLattice& fv = *fns_[v];
    const FunctionOnLattice& fc = *fns_[c];
    const PointSet& sv = fv.support();
    const PointSet& sc = fc.support();
    const bool scan = sc.size() < shell_.size();
    std::array<Coord, kMaxDim> z{};
    for (std::size_t i = 0; i < sv.size(); ++i) {
      if (symmetric_ && canon_[v][i] != static_cast<std::int64_t>(i)) continue;
      if (h_[v][i] == 0.0) continue;
      auto x = sv[i];
      Compensated m;
      if (scan) {
        for (std::size_t j = 0; j < sc.size(); ++j) {
          if (squared_distance(x, sc[j]) == lambda_) m.add(child_value(c, static_cast<std::int64_t>(j)));
        }
      } else {
        for (std::size_t j = 0; j < shell_.size(); ++j) {
          auto s = shell_[j];
          for (int t = 0; t < d_; ++t) z[t] = x[t] + s[t];
          m.add(child_value(c, fc.find({z.data(), static_cast<std::size_t>(d_)})));
        }
      }
      h_[v][i] *= m.value();
    }
    if (symmetric_) {
      for (std::size_t i = 0; i < sv.size(); ++i) {
        const std::int64_t k = canon_[v][i];
        if (k != static_cast<std::int64_t>(i)) h_[v][i] = k < 0 ? 0.0 : h_[v][static_cast<std::size_t>(k)];
      }
    }
  }

  const DistanceGraph& g_;
  int d_;
  std::int64_t lambda_;
  const std::vector<const FunctionOnLattice*>& fns_;
  bool symmetric_;
  PointSet shell_;
  std::vector<std::vector<double>> h_;
  std::vector<std::vector<std::int64_t>> canon_;
};

}  // namespace

double tree_eval(const DistanceGraph& g, int d, std::int64_t lambda, const std::vector<const FunctionOnLattice*>& fns,
                 bool symmetric, const EnumerationLimits& limits) {
  double total = 1.0;
  for (const auto& comp : g.components()) {
    int root = comp.front();
    for (int v : comp) {
      if (fns[v]->support_size() < fns[root]->support_size()) root = v;
    }
    TreeRunner runner(g, d, lambda, fns, symmetric, limits);
    total *= runner.total(root);
    if (total == 0.0) break;
  }
  return total;
}

std::vector<double> tree_root_values(const DistanceGraph& g, int d, std::int64_t lambda,
                                     const std::vector<const FunctionOnLattice*>& fns, int root,
                                     const EnumerationLimits& limits) {
  TreeRunner runner(g, d, lambda, fns, false, limits);
  return runner.solve(root);
}

double chain_eval(const DistanceGraph& g, int d, std::int64_t lambda, const std::vector<const FunctionOnLattice*>& fns,
                  bool symmetric, const EnumerationLimits& limits) {
  const int k = g.vertex_count();
  const PointSet shell = enumerate_sphere(d, lambda, limits);
  const Coord r = static_cast<Coord>(isqrt(lambda));
  std::vector<double> m = fns[k - 1]->values();
  for (int j = k - 2; j >= 0; --j) {
    const FunctionOnLattice& next = *fns[j + 1];
    DenseGrid grid(d, next.bbox_lo(), next.bbox_hi(), limits.max_points);
    for (std::size_t i = 0; i < next.support_size(); ++i) grid.set(next.support()[i].data(), m[i]);
    std::vector<std::int64_t> offsets(shell.size());
    for (std::size_t s = 0; s < shell.size(); ++s) offsets[s] = grid.offset(shell[s].data());

    const FunctionOnLattice& f = *fns[j];
    const PointSet& sf = f.support();
    std::vector<std::int64_t> canon;
    if (symmetric) canon = canonical_indices(f);
    std::vector<double> out(sf.size(), 0.0);
    std::array<Coord, kMaxDim> z{};
    for (std::size_t i = 0; i < sf.size(); ++i) {
      if (symmetric && canon[i] != static_cast<std::int64_t>(i)) continue;
      const Coord* x = sf[i].data();
      Compensated acc;
      if (grid.contains_ball_box(x, r)) {
        const std::int64_t base = grid.index_unchecked(x);
        for (std::int64_t o : offsets) acc.add(grid.at_index(base + o));
      } else {
        for (std::size_t s = 0; s < shell.size(); ++s) {
          auto sv = shell[s];
          for (int t = 0; t < d; ++t) z[t] = x[t] + sv[t];
          acc.add(grid.at(z.data()));
        }
      }
      out[i] = f.values()[i] * acc.value();
    }
    if (symmetric) {
      for (std::size_t i = 0; i < sf.size(); ++i) {
        if (canon[i] != static_cast<std::int64_t>(i)) out[i] = canon[i] < 0 ? 0.0 : out[static_cast<std::size_t>(canon[i])];
      }
    }
    m.swap(out);
  }
  Compensated total;
  for (double v : m) total.add(v);
  return total.value();
}

}  // namespace distgraph::detail
