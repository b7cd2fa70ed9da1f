#include "distgraph/symmetry.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>

#include "distgraph/errors.hpp"

namespace distgraph {

std::uint64_t hyperoctahedral_order(int d) {
  validate_dimension(d);
  std::uint64_t g = 1;
  for (int i = 1; i <= d; ++i) g *= 2ULL * static_cast<std::uint64_t>(i);
  return g;
}

void canonicalize(std::span<const Coord> in, Coord* out) {
  const std::size_t d = in.size();
  for (std::size_t i = 0; i < d; ++i) out[i] = in[i] < 0 ? -in[i] : in[i];
  std::sort(out, out + d, std::greater<Coord>());
}

Point canonical_form(std::span<const Coord> x) {
  Point p(x.size());
  canonicalize(x, p.data());
  return p;
}

std::uint64_t orbit_size(std::span<const Coord> x) {
  std::array<Coord, kMaxDim> c{};
  canonicalize(x, c.data());
  const int d = static_cast<int>(x.size());
  std::uint64_t stab = 1;
  int run = 1;
  for (int i = 1; i <= d; ++i) {
    if (i < d && c[i] == c[i - 1]) {
      ++run;
      stab *= static_cast<std::uint64_t>(run);
    } else {
      run = 1;
    }
    if (i - 1 < d && c[i - 1] == 0) stab *= 2;
  }
  return hyperoctahedral_order(d) / stab;
}

BlockPartition BlockPartition::full(int d) {
  BlockPartition p;
  p.dim = d;
  p.block_start[0] = 1;
  for (int i = 0; i < d; ++i) p.sign_free[i] = 1;
  return p;
}

bool BlockPartition::is_canonical(const Coord* y) const {
  for (int i = 0; i < dim; ++i) {
    if (sign_free[i] && y[i] < 0) return false;
    if (!block_start[i] && y[i] > y[i - 1]) return false;
  }
  return true;
}

BlockPartition BlockPartition::refine(const Coord* y) const {
  BlockPartition p = *this;
  for (int i = 0; i < dim; ++i) {
    if (!block_start[i] && y[i] != y[i - 1]) p.block_start[i] = 1;
    if (y[i] != 0) p.sign_free[i] = 0;
  }
  return p;
}

std::uint64_t BlockPartition::stabilizer_order() const {
  std::uint64_t s = 1;
  int run = 0;
  for (int i = 0; i < dim; ++i) {
    run = block_start[i] ? 1 : run + 1;
    s *= static_cast<std::uint64_t>(run);
    if (sign_free[i]) s *= 2;
  }
  return s;
}

}  // namespace distgraph
