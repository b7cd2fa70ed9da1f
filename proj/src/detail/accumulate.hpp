#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "distgraph/errors.hpp"
#include "distgraph/lattice.hpp"

namespace distgraph::detail {

// Neumaier compensated sum
struct Compensated {
  double s = 0.0;
  double c = 0.0;
  void add(double v) {
    const double t = s + v;
    if (std::abs(s) >= std::abs(v)) {
      c += (s - t) + v;
    } else {
      c += (v - t) + s;
    }
    s = t;
  }
  double value() const { return s + c; }
};

template <class V>
struct Accumulator;

template <>
struct Accumulator<double> {
  Compensated acc;
  void add(double v) { acc.add(v); }
  double value() const { return acc.value(); }
};

template <>
struct Accumulator<Count> {
  Count acc = 0;
  void add(Count v) { acc += v; }
  Count value() const { return acc; }
};

// Hash map from lattice point to an accumulated value, insertion ordered.
template <class V>
class PointAccumulator {
 public:
  PointAccumulator(int dim, std::uint64_t max_entries) : points_(dim), max_entries_(max_entries) {
    slots_.assign(1024, -1);
    mask_ = slots_.size() - 1;
  }

  void add(std::span<const Coord> p, V v) {
    std::uint64_t s = hash_point(p) & mask_;
    while (true) {
      const std::int64_t idx = slots_[s];
      if (idx < 0) break;
      auto q = points_[static_cast<std::size_t>(idx)];
      if (std::equal(q.begin(), q.end(), p.begin())) {
        acc_[static_cast<std::size_t>(idx)].add(v);
        return;
      }
      s = (s + 1) & mask_;
    }
    if (points_.size() >= max_entries_) throw CapacityError("intermediate support exceeds the point budget");
    slots_[s] = static_cast<std::int64_t>(points_.size());
    points_.push_back(p);
    acc_.emplace_back();
    acc_.back().add(v);
    if (2 * points_.size() > slots_.size()) grow();
  }

  const PointSet& points() const { return points_; }
  std::vector<V> values() const {
    std::vector<V> out;
    out.reserve(acc_.size());
    for (const auto& a : acc_) out.push_back(a.value());
    return out;
  }

 private:
  void grow() {
    slots_.assign(slots_.size() * 2, -1);
    mask_ = slots_.size() - 1;
    for (std::size_t i = 0; i < points_.size(); ++i) {
      std::uint64_t s = hash_point(points_[i]) & mask_;
      while (slots_[s] >= 0) s = (s + 1) & mask_;
      slots_[s] = static_cast<std::int64_t>(i);
    }
  }

  PointSet points_;
  std::vector<Accumulator<V>> acc_;
  std::vector<std::int64_t> slots_;
  std::uint64_t mask_ = 0;
  std::uint64_t max_entries_;
};

}  // namespace distgraph::detail
