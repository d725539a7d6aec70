#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "tdopt/circuit.hpp"

namespace tdopt {

struct BruteForceLimits {
  int max_columns = 8;
};

struct BruteForceResult {
  int min_t_depth = 0;
  // One optimal merge sequence; each pair indexes the then-current
  // canonicalized circuit, pairs applied one at a time.
  std::vector<MergePair> witness;
};

// Exhaustive search over sequences of single merges (including merges that
// only become possible after earlier ones), memoized on the exact column
// sequence. True optimum for tiny instances; refuses anything wider than
// limits.max_columns.
BruteForceResult brute_force_optimum(const Circuit& circuit, MergePolicy policy,
                                     BruteForceLimits limits = {});

struct LookaheadParams {
  int window = 6;  // 2..8; the window is permuted exhaustively
  MergePolicy policy{};
};

struct LookaheadReport {
  int td_before = 0;
  int td_after = 0;
  int tc_before = 0;
  int tc_after = 0;
  int merges = 0;
  std::uint64_t permutations_tried = 0;
};

// Window-permutation reference optimizer: slides a window left to right, tries
// every ordering of the columns inside it (under StrictCommute only orderings
// whose inverted pairs commute), greedily merges adjacent mergeable columns,
// keeps the ordering with the most merges, and advances past the window's
// output. Deterministic.
std::pair<Circuit, LookaheadReport> lookahead_optimize(const Circuit& circuit,
                                                       const LookaheadParams& params);

}  // namespace tdopt
