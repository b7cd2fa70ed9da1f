#pragma once

#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "distgraph/lattice.hpp"

namespace distgraph {

// Finitely supported real function on Z^d. Immutable; copies share storage.
class FunctionOnLattice {
 public:
  FunctionOnLattice() : FunctionOnLattice(1) {}
  explicit FunctionOnLattice(int dim);

  // zero values are dropped, a repeated point is a ValidationError
  static FunctionOnLattice from_entries(int dim, const std::vector<std::pair<Point, double>>& entries);
  static FunctionOnLattice from_points(const PointSet& pts, const std::vector<double>& values);
  static FunctionOnLattice indicator(const PointSet& pts);
  static FunctionOnLattice delta(int dim);
  static FunctionOnLattice delta_at(const Point& p);

  int dim() const { return impl_->support.dim(); }
  std::size_t support_size() const { return impl_->support.size(); }
  const PointSet& support() const { return impl_->support; }
  const std::vector<double>& values() const { return impl_->values; }
  double at(std::span<const Coord> x) const;
  // position of x in support(), -1 when unsupported
  std::int64_t find(std::span<const Coord> x) const { return impl_->index.find(x); }

  // componentwise bounding box of the support; empty support gives lo > hi
  const Point& bbox_lo() const { return impl_->lo; }
  const Point& bbox_hi() const { return impl_->hi; }

  // invariant under every signed permutation of coordinates
  bool is_invariant() const { return impl_->invariant; }
  bool is_integral() const { return impl_->integral; }

  double sum() const;
  double max_abs() const;

 private:
  struct Impl {
    PointSet support;
    std::vector<double> values;
    PointIndex index;
    Point lo, hi;
    bool invariant = true;
    bool integral = true;
  };
  explicit FunctionOnLattice(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  static FunctionOnLattice build(PointSet pts, std::vector<double> values);
  std::shared_ptr<const Impl> impl_;
};

// {"dimension": d, "entries": [{"point": [...], "value": v}, ...]}
std::string function_to_json(const FunctionOnLattice& f);
FunctionOnLattice function_from_json(const std::string& text);

}  // namespace distgraph
