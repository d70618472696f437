#pragma once

#include <bit>
#include <cstdint>

namespace eqindex {

// Basis blades of Lambda(R^n) / Cl(n) are subsets of {0..n-1} stored as bit
// masks, ordered products of generators with ascending index.

struct BladeProd {
  uint32_t mask = 0;
  int sign = 0;  // 0 means the product vanished (exterior case)
};

inline int blade_deg(uint32_t m) { return std::popcount(m); }

/// Parity sign of sorting the concatenation (a, b) into ascending order:
/// (-1)^{# pairs (i,j), i in a, j in b, i > j}.
inline int reorder_sign(uint32_t a, uint32_t b) {
  int swaps = 0;
  for (uint32_t j = b; j; j &= j - 1) {
    uint32_t jbit = j & (~j + 1);
    swaps += std::popcount(a & ~(jbit | (jbit - 1)));  // i in a with i > j
  }
  return (swaps & 1) ? -1 : 1;
}

/// Exterior product of basis blades.
inline BladeProd wedge_blades(uint32_t a, uint32_t b) {
  if (a & b) return {0, 0};
  return {a | b, reorder_sign(a, b)};
}

/// Clifford product of basis blades with the convention e_i^2 = -1
/// (so c(v)^2 = -|v|^2).  Result is always a single signed blade.
inline BladeProd clifford_blades(uint32_t a, uint32_t b) {
  int s = reorder_sign(a, b);
  if (std::popcount(a & b) & 1) s = -s;  // each annihilated pair gives e_i^2 = -1
  return {a ^ b, s};
}

/// Interior product iota_{e_j} on a basis blade; zero if j not present.
inline BladeProd interior_blade(int j, uint32_t m) {
  uint32_t jbit = uint32_t(1) << j;
  if (!(m & jbit)) return {0, 0};
  int below = std::popcount(m & (jbit - 1));
  return {m & ~jbit, (below & 1) ? -1 : 1};
}

}  // namespace eqindex
