#include "distgraph/lattice.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "distgraph/errors.hpp"

namespace distgraph {

std::string to_string(Count c) {
  if (c == 0) return "0";
  std::string s;
  while (c > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(c % 10)));
    c /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

long double to_long_double(Count c) {
  const long double hi = static_cast<long double>(static_cast<std::uint64_t>(c >> 64));
  const long double lo = static_cast<long double>(static_cast<std::uint64_t>(c));
  return hi * 18446744073709551616.0L + lo;
}

std::int64_t squared_norm(std::span<const Coord> x) {
  std::int64_t s = 0;
  for (Coord c : x) s += static_cast<std::int64_t>(c) * c;
  return s;
}

std::int64_t squared_distance(std::span<const Coord> a, std::span<const Coord> b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::int64_t t = static_cast<std::int64_t>(a[i]) - b[i];
    s += t * t;
  }
  return s;
}

Point PointSet::point(std::size_t i) const {
  auto s = (*this)[i];
  return Point(s.begin(), s.end());
}

void PointSet::push_back(std::span<const Coord> p) {
  if (static_cast<int>(p.size()) != dim_) throw DimensionMismatch("point dimension does not match set");
  coords_.insert(coords_.end(), p.begin(), p.end());
}

void PointSet::sort() {
  const std::size_t n = size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    auto pa = (*this)[a];
    auto pb = (*this)[b];
    return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
  });
  std::vector<Coord> out;
  out.reserve(coords_.size());
  for (std::size_t i : order) {
    auto p = (*this)[i];
    out.insert(out.end(), p.begin(), p.end());
  }
  coords_.swap(out);
}

std::uint64_t hash_point(std::span<const Coord> p) {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (Coord c : p) {
    h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(c)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdULL;
  }
  h ^= h >> 33;
  h *= 0xc4ceb9fe1a85ec53ULL;
  h ^= h >> 29;
  return h;
}

PointIndex::PointIndex(const PointSet& points) : points_(&points) {
  std::uint64_t cap = 16;
  while (cap < 2 * points.size() + 1) cap <<= 1;
  slots_.assign(cap, -1);
  mask_ = cap - 1;
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::uint64_t s = hash_point(points[i]) & mask_;
    while (slots_[s] >= 0) {
      auto q = points[static_cast<std::size_t>(slots_[s])];
      if (std::equal(q.begin(), q.end(), points[i].begin())) throw ValidationError("duplicate point in set");
      s = (s + 1) & mask_;
    }
    slots_[s] = static_cast<std::int64_t>(i);
  }
}

std::int64_t PointIndex::find(std::span<const Coord> p) const {
  if (slots_.empty()) return -1;
  std::uint64_t s = hash_point(p) & mask_;
  while (true) {
    const std::int64_t idx = slots_[s];
    if (idx < 0) return -1;
    auto q = (*points_)[static_cast<std::size_t>(idx)];
    if (std::equal(q.begin(), q.end(), p.begin())) return idx;
    s = (s + 1) & mask_;
  }
}

void validate_dimension(int d) {
  if (d < 1) throw ValidationError("dimension must be >= 1, got " + std::to_string(d));
  if (d > kMaxDim) throw ValidationError("dimension above supported maximum " + std::to_string(kMaxDim));
}

std::int64_t isqrt(std::int64_t n) {
  if (n < 0) return -1;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

namespace {

std::vector<std::vector<Count>> square_sum_table(int d, std::int64_t n_max) {
  std::vector<std::vector<Count>> cnt(d + 1, std::vector<Count>(n_max + 1, 0));
  cnt[0][0] = 1;
  for (int j = 1; j <= d; ++j) {
    for (std::int64_t n = 0; n <= n_max; ++n) {
      Count s = cnt[j - 1][n];
      for (std::int64_t a = 1; a * a <= n; ++a) s += 2 * cnt[j - 1][n - a * a];
      cnt[j][n] = s;
    }
  }
  return cnt;
}

void check_capacity(Count predicted, const EnumerationLimits& limits, const char* what) {
  if (predicted > limits.max_points) {
    throw CapacityError(std::string(what) + " would hold " + to_string(predicted) +
                        " points, above the budget of " + std::to_string(limits.max_points));
  }
}

// shared recursion for spheres (exact == true) and balls
void enumerate_norm(int d, std::int64_t target, bool exact, PointSet& out) {
  std::array<Coord, kMaxDim> x{};
  auto rec = [&](auto&& self, int i, std::int64_t rem) -> void {
    if (i == d - 1) {
      const std::int64_t r = isqrt(rem);
      if (exact) {
        if (r * r != rem) return;
        x[i] = static_cast<Coord>(-r);
        out.push_back({x.data(), static_cast<std::size_t>(d)});
        if (r != 0) {
          x[i] = static_cast<Coord>(r);
          out.push_back({x.data(), static_cast<std::size_t>(d)});
        }
      } else {
        for (std::int64_t a = -r; a <= r; ++a) {
          x[i] = static_cast<Coord>(a);
          out.push_back({x.data(), static_cast<std::size_t>(d)});
        }
      }
      return;
    }
    const std::int64_t r = isqrt(rem);
    for (std::int64_t a = -r; a <= r; ++a) {
      x[i] = static_cast<Coord>(a);
      self(self, i + 1, rem - a * a);
    }
  };
  rec(rec, 0, target);
}

}  // namespace

Count sphere_cardinality(int d, std::int64_t lambda) {
  validate_dimension(d);
  if (lambda < 0) throw ValidationError("lambda must be >= 0");
  return square_sum_table(d, lambda)[d][lambda];
}

Count ball_cardinality(int d, std::int64_t r2) {
  validate_dimension(d);
  if (r2 < 0) return 0;
  auto t = square_sum_table(d, r2);
  Count s = 0;
  for (std::int64_t n = 0; n <= r2; ++n) s += t[d][n];
  return s;
}

PointSet enumerate_sphere(int d, std::int64_t lambda, const EnumerationLimits& limits) {
  const Count predicted = sphere_cardinality(d, lambda);
  check_capacity(predicted, limits, "sphere");
  PointSet out(d);
  out.reserve(static_cast<std::size_t>(predicted));
  enumerate_norm(d, lambda, true, out);
  return out;
}

PointSet enumerate_ball(int d, std::int64_t r2, const EnumerationLimits& limits) {
  validate_dimension(d);
  PointSet out(d);
  if (r2 < 0) return out;
  const Count predicted = ball_cardinality(d, r2);
  check_capacity(predicted, limits, "ball");
  out.reserve(static_cast<std::size_t>(predicted));
  enumerate_norm(d, r2, false, out);
  return out;
}

PointSet enumerate_box(int d, int half_width, const EnumerationLimits& limits) {
  validate_dimension(d);
  if (half_width < 0) throw ValidationError("box half width must be >= 0");
  Count predicted = 1;
  for (int i = 0; i < d; ++i) predicted *= static_cast<Count>(2 * half_width + 1);
  check_capacity(predicted, limits, "box");
  PointSet out(d);
  out.reserve(static_cast<std::size_t>(predicted));
  std::array<Coord, kMaxDim> x{};
  x.fill(-half_width);
  while (true) {
    out.push_back({x.data(), static_cast<std::size_t>(d)});
    int i = d - 1;
    while (i >= 0 && x[i] == half_width) {
      x[i] = -half_width;
      --i;
    }
    if (i < 0) break;
    ++x[i];
  }
  return out;
}

void write_sphere_text(std::ostream& out, int d, std::int64_t lambda, const PointSet& pts) {
  out << "d=" << d << " lambda=" << lambda << " count=" << pts.size() << "\n";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    auto p = pts[i];
    for (int j = 0; j < d; ++j) {
      if (j) out << ' ';
      out << p[j];
    }
    out << "\n";
  }
}

SphereFile read_sphere_text(std::istream& in) {
  SphereFile f;
  std::string header;
  if (!std::getline(in, header)) throw ValidationError("empty sphere file");
  long long count = -1;
  long long lambda = 0;
  if (std::sscanf(header.c_str(), "d=%d lambda=%lld count=%lld", &f.d, &lambda, &count) != 3) {
    throw ValidationError("malformed sphere header: " + header);
  }
  f.lambda = lambda;
  validate_dimension(f.d);
  f.points = PointSet(f.d);
  std::vector<Coord> p(f.d);
  for (long long i = 0; i < count; ++i) {
    for (int j = 0; j < f.d; ++j) {
      if (!(in >> p[j])) throw ValidationError("sphere file truncated");
    }
    if (squared_norm(p) != f.lambda) throw ValidationError("point off the sphere in sphere file");
    f.points.push_back(p);
  }
  return f;
}

}  // namespace distgraph
