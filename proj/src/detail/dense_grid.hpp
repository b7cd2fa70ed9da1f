#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "distgraph/errors.hpp"
#include "distgraph/function.hpp"
#include "distgraph/lattice.hpp"

namespace distgraph::detail {

// Values of a function on the bounding box of its support, zero elsewhere.
class DenseGrid {
 public:
  DenseGrid() = default;

  // box [lo, hi]; throws CapacityError above max_cells
  DenseGrid(int dim, const Point& lo, const Point& hi, std::uint64_t max_cells) : dim_(dim) {
    std::uint64_t cells = 1;
    for (int i = 0; i < dim; ++i) {
      lo_[i] = lo[i];
      hi_[i] = hi[i];
      if (hi[i] < lo[i]) {
        cells = 0;
        break;
      }
      const std::uint64_t ext = static_cast<std::uint64_t>(hi[i] - lo[i] + 1);
      if (ext != 0 && cells > max_cells / ext) throw CapacityError("dense grid exceeds the point budget");
      cells *= ext;
    }
    if (cells > max_cells) throw CapacityError("dense grid exceeds the point budget");
    std::int64_t stride = 1;
    for (int i = dim - 1; i >= 0; --i) {
      stride_[i] = stride;
      stride *= (cells == 0 ? 1 : hi_[i] - lo_[i] + 1);
    }
    data_.assign(cells, 0.0);
  }

  static DenseGrid of(const FunctionOnLattice& f, std::uint64_t max_cells) {
    DenseGrid g(f.dim(), f.bbox_lo(), f.bbox_hi(), max_cells);
    for (std::size_t i = 0; i < f.support_size(); ++i) g.set(f.support()[i].data(), f.values()[i]);
    return g;
  }

  bool empty() const { return data_.empty(); }

  std::int64_t index_unchecked(const Coord* x) const {
    std::int64_t idx = 0;
    for (int i = 0; i < dim_; ++i) idx += static_cast<std::int64_t>(x[i] - lo_[i]) * stride_[i];
    return idx;
  }

  // -1 outside the box
  std::int64_t index(const Coord* x) const {
    if (data_.empty()) return -1;
    std::int64_t idx = 0;
    for (int i = 0; i < dim_; ++i) {
      if (x[i] < lo_[i] || x[i] > hi_[i]) return -1;
      idx += static_cast<std::int64_t>(x[i] - lo_[i]) * stride_[i];
    }
    return idx;
  }

  double at(const Coord* x) const {
    const std::int64_t i = index(x);
    return i < 0 ? 0.0 : data_[static_cast<std::size_t>(i)];
  }
  double at_index(std::int64_t i) const { return data_[static_cast<std::size_t>(i)]; }
  void set(const Coord* x, double v) { data_[static_cast<std::size_t>(index_unchecked(x))] = v; }

  // box [x - r, x + r] inside the grid
  bool contains_ball_box(const Coord* x, Coord r) const {
    if (data_.empty()) return false;
    for (int i = 0; i < dim_; ++i) {
      if (x[i] - r < lo_[i] || x[i] + r > hi_[i]) return false;
    }
    return true;
  }

  // linear offset of a displacement
  std::int64_t offset(const Coord* s) const {
    std::int64_t o = 0;
    for (int i = 0; i < dim_; ++i) o += static_cast<std::int64_t>(s[i]) * stride_[i];
    return o;
  }

 private:
  int dim_ = 0;
  std::array<Coord, kMaxDim> lo_{}, hi_{};
  std::array<std::int64_t, kMaxDim> stride_{};
  std::vector<double> data_;
};

}  // namespace distgraph::detail
