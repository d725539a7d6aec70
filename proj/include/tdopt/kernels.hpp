#pragma once

#include <cstdint>
#include <vector>

#include "tdopt/circuit.hpp"

namespace tdopt {

// Bit-packed view of a circuit: one bit per (column, qubit) and axis. This is
// the representation the hot loops run on; the cell-wise predicates in
// circuit.hpp are the reference they are tested against.
struct CircuitMasks {
  int n = 0;
  int words = 0;  // 64-bit words per column
  std::vector<std::uint64_t> x, y, z;  // column c occupies [c*words, (c+1)*words)
  std::vector<std::uint8_t> phase;
  std::vector<int> t_counts;

  int columns() const { return static_cast<int>(phase.size()); }
};

CircuitMasks build_masks(const Circuit& circuit);

bool masks_commute(const CircuitMasks& m, int i, int j);
MergeCheck masks_can_merge(const CircuitMasks& m, int i, int j, OverlapRule rule);

// strict_ok(i, j), i < j: every column strictly between i and j commutes with
// column j. Built in O(c^2) from the pairwise commutation matrix by scanning
// i downward from j.
struct StrictTable {
  int c = 0;
  std::vector<std::uint8_t> ok;

  bool operator()(int i, int j) const {
    return ok[static_cast<std::size_t>(i) * static_cast<std::size_t>(c) +
              static_cast<std::size_t>(j)] != 0;
  }
};

StrictTable build_strict_table(const CircuitMasks& m);

// All i < j with can_merge true (plus the strict ordering condition under
// StrictCommute), in lexicographic order. Parallel over i; the concatenation
// order is fixed, so output is identical to a serial sweep.
std::vector<MergePair> enumerate_candidates(const CircuitMasks& m, MergePolicy policy,
                                            const StrictTable* strict);

}  // namespace tdopt
