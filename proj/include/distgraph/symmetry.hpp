#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "distgraph/lattice.hpp"

namespace distgraph {

// Signed permutations of coordinates (the hyperoctahedral group) preserve |x|^2,
// distances and therefore every configuration constraint.

std::uint64_t hyperoctahedral_order(int d);

// Absolute values sorted non-increasing.
void canonicalize(std::span<const Coord> in, Coord* out);
Point canonical_form(std::span<const Coord> x);
std::uint64_t orbit_size(std::span<const Coord> x);

// Stabilizer of a tuple of points that are already in canonical position:
// coordinates split into contiguous blocks that may be permuted freely, and
// sign_free marks coordinates where every point of the tuple is zero.
struct BlockPartition {
  int dim = 0;
  std::array<std::uint8_t, kMaxDim> block_start{};
  std::array<std::uint8_t, kMaxDim> sign_free{};

  static BlockPartition full(int d);
  bool is_canonical(const Coord* y) const;
  BlockPartition refine(const Coord* y) const;
  std::uint64_t stabilizer_order() const;
};

}  // namespace distgraph
