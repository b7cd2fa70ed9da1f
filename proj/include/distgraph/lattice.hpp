#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace distgraph {

inline constexpr int kMaxDim = 16;

using Coord = std::int32_t;
using Point = std::vector<Coord>;
// configuration counts overflow 64 bits quickly for path graphs
using Count = unsigned __int128;

std::string to_string(Count c);
long double to_long_double(Count c);

struct EnumerationLimits {
  std::uint64_t max_points = 100'000'000;
};

std::int64_t squared_norm(std::span<const Coord> x);
std::int64_t squared_distance(std::span<const Coord> a, std::span<const Coord> b);

// Flat storage of same-dimension points.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(int dim) : dim_(dim) {}

  int dim() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  bool empty() const { return size() == 0; }

  std::span<const Coord> operator[](std::size_t i) const {
    return {coords_.data() + i * dim_, static_cast<std::size_t>(dim_)};
  }
  Point point(std::size_t i) const;
  void push_back(std::span<const Coord> p);
  void reserve(std::size_t n) { coords_.reserve(n * dim_); }
  const std::vector<Coord>& flat() const { return coords_; }

  // lexicographic order of points
  void sort();

 private:
  int dim_ = 0;
  std::vector<Coord> coords_;
};

std::uint64_t hash_point(std::span<const Coord> p);

// Open-addressing index from point to position in a PointSet.
class PointIndex {
 public:
  PointIndex() = default;
  explicit PointIndex(const PointSet& points);
  // -1 when absent
  std::int64_t find(std::span<const Coord> p) const;

 private:
  const PointSet* points_ = nullptr;
  std::vector<std::int64_t> slots_;
  std::uint64_t mask_ = 0;
};

void validate_dimension(int d);

// All x with |x|^2 == lambda, lexicographic order.
PointSet enumerate_sphere(int d, std::int64_t lambda, const EnumerationLimits& limits = {});
// All x with |x|^2 <= r2, lexicographic order.
PointSet enumerate_ball(int d, std::int64_t r2, const EnumerationLimits& limits = {});
// All x with max|x_i| <= half_width.
PointSet enumerate_box(int d, int half_width, const EnumerationLimits& limits = {});

// Counting recursion only, never materializes the shell.
Count sphere_cardinality(int d, std::int64_t lambda);
Count ball_cardinality(int d, std::int64_t r2);

// Largest m with m*m <= n.
std::int64_t isqrt(std::int64_t n);

// Text format: header line "d=<int> lambda=<int> count=<int>", then one point
// per line as space separated coordinates.
void write_sphere_text(std::ostream& out, int d, std::int64_t lambda, const PointSet& pts);
struct SphereFile {
  int d = 0;
  std::int64_t lambda = 0;
  PointSet points;
};
SphereFile read_sphere_text(std::istream& in);

}  // namespace distgraph
