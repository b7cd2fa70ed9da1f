#pragma once

// Pruned enumeration of lattice points on an intersection of equal-radius shells.
//
// Points y with |y - c0|^2 == lambda and |y - c_j|^2 == lambda for every extra
// center c_j. Writing a = y - c0 the extra shells become the linear equations
// 2 a.(c_j - c0) == |c_j - c0|^2, pruned with Cauchy-Schwarz on the unassigned
// coordinate suffix. Optional box bounds and block-canonical constraints.

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <type_traits>

#include "distgraph/lattice.hpp"
#include "distgraph/symmetry.hpp"

namespace distgraph::detail {

inline constexpr int kMaxCenters = 16;

struct ShellQuery {
  int dim = 0;
  std::int64_t lambda = 0;
  std::array<Coord, kMaxDim> c0{};
  int m = 0;
  std::array<std::array<std::int64_t, kMaxDim>, kMaxCenters> w{};
  std::array<std::int64_t, kMaxCenters> h{};
  std::array<std::array<std::int64_t, kMaxDim + 1>, kMaxCenters> suffix{};
  bool bounded = false;
  std::array<Coord, kMaxDim> lo{};
  std::array<Coord, kMaxDim> hi{};
  const BlockPartition* blocks = nullptr;
  bool feasible = true;

  void reset(int d, std::int64_t lam, const Coord* center) {
    dim = d;
    lambda = lam;
    for (int i = 0; i < d; ++i) c0[i] = center[i];
    m = 0;
    bounded = false;
    blocks = nullptr;
    feasible = true;
  }

  void add_center(const Coord* c) {
    std::int64_t n2 = 0;
    auto& wj = w[m];
    for (int i = 0; i < dim; ++i) {
      wj[i] = static_cast<std::int64_t>(c[i]) - c0[i];
      n2 += wj[i] * wj[i];
    }
    if (n2 % 2 != 0 || n2 > 4 * lambda) feasible = false;
    h[m] = n2 / 2;
    auto& sj = suffix[m];
    sj[dim] = 0;
    for (int i = dim - 1; i >= 0; --i) sj[i] = sj[i + 1] + wj[i] * wj[i];
    ++m;
  }

  void set_bounds(const Coord* l, const Coord* u) {
    bounded = true;
    for (int i = 0; i < dim; ++i) {
      lo[i] = l[i];
      hi[i] = u[i];
    }
  }
};

template <class Emit>
class ShellWalker {
 public:
  ShellWalker(const ShellQuery& q, Emit& emit) : q_(q), emit_(emit) {}

  void run() {
    if (!q_.feasible || q_.lambda < 0) return;
    for (int j = 0; j < q_.m; ++j) r_[j] = q_.h[j];
    step(0, q_.lambda);
  }

 private:
  bool admissible_tail(const std::int64_t* base, int i, std::int64_t a, std::int64_t rem) const {
    for (int j = 0; j < q_.m; ++j) {
      const std::int64_t res = base[j] - a * q_.w[j][i];
      const __int128 lhs = static_cast<__int128>(res) * res;
      const __int128 rhs = static_cast<__int128>(rem) * q_.suffix[j][i + 1];
      if (lhs > rhs) return false;
    }
    return true;
  }

  void range(int i, std::int64_t rem, std::int64_t& lo, std::int64_t& hi) const {
    const std::int64_t r = isqrt(rem);
    lo = -r;
    hi = r;
    if (q_.bounded) {
      lo = std::max<std::int64_t>(lo, static_cast<std::int64_t>(q_.lo[i]) - q_.c0[i]);
      hi = std::min<std::int64_t>(hi, static_cast<std::int64_t>(q_.hi[i]) - q_.c0[i]);
    }
    if (q_.blocks) {
      if (q_.blocks->sign_free[i]) lo = std::max<std::int64_t>(lo, -static_cast<std::int64_t>(q_.c0[i]));
      if (!q_.blocks->block_start[i]) hi = std::min<std::int64_t>(hi, static_cast<std::int64_t>(y_[i - 1]) - q_.c0[i]);
    }
  }

  void step(int i, std::int64_t rem) {
    std::int64_t lo, hi;
    range(i, rem, lo, hi);
    if (lo > hi) return;
    if (i == q_.dim - 1) {
      const std::int64_t r = isqrt(rem);
      if (r * r != rem) return;
      const std::int64_t cand[2] = {-r, r};
      for (int t = 0; t < (r == 0 ? 1 : 2); ++t) {
        const std::int64_t a = cand[t];
        if (a < lo || a > hi) continue;
        bool ok = true;
        for (int j = 0; j < q_.m && ok; ++j) ok = (r_[j] - a * q_.w[j][i]) == 0;
        if (!ok) continue;
        y_[i] = static_cast<Coord>(q_.c0[i] + a);
        emit_(y_.data());
      }
      return;
    }
    std::array<std::int64_t, kMaxCenters> saved;
    for (int j = 0; j < q_.m; ++j) saved[j] = r_[j];
    for (std::int64_t a = lo; a <= hi; ++a) {
      const std::int64_t rem2 = rem - a * a;
      if (!admissible_tail(saved.data(), i, a, rem2)) continue;
      for (int j = 0; j < q_.m; ++j) r_[j] = saved[j] - a * q_.w[j][i];
      y_[i] = static_cast<Coord>(q_.c0[i] + a);
      step(i + 1, rem2);
    }
    for (int j = 0; j < q_.m; ++j) r_[j] = saved[j];
  }

  const ShellQuery& q_;
  Emit& emit_;
  std::array<Coord, kMaxDim> y_{};
  std::array<std::int64_t, kMaxCenters> r_{};
};

// emit(const Coord* y) is called in lexicographic order of y
template <class Emit>
void enumerate_shell(const ShellQuery& q, Emit&& emit) {
  ShellWalker<std::remove_reference_t<Emit>> walker(q, emit);
  walker.run();
}

}  // namespace distgraph::detail
