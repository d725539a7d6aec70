#include "tdopt/kernels.hpp"

#include <doctest.h>

#include "tdopt/candidates.hpp"
#include "tdopt/rng.hpp"
#include "test_helpers.hpp"

using namespace tdopt;

TEST_CASE("mask predicates agree with the cell-wise reference") {
  Rng rng(211);
  for (int trial = 0; trial < 80; ++trial) {
    // Straddles the 64-bit word boundary for part of the trials.
    const int n = 1 + static_cast<int>(rng.below(130));
    const int cols = 2 + static_cast<int>(rng.below(10));
    const Circuit c = testing::random_circuit(n, cols, rng.unit_real(), rng.next_u64());
    const CircuitMasks masks = build_masks(c);
    REQUIRE(masks.columns() == cols);
    for (int i = 0; i < cols; ++i) {
      CHECK(masks.t_counts[static_cast<std::size_t>(i)] ==
            c.columns[static_cast<std::size_t>(i)].t_count());
      for (int j = i + 1; j < cols; ++j) {
        CHECK(masks_commute(masks, i, j) ==
              columns_commute(c.columns[static_cast<std::size_t>(i)],
                              c.columns[static_cast<std::size_t>(j)]));
        for (const OverlapRule rule : {OverlapRule::DisjointOnly, OverlapRule::EqualAxisOverlap}) {
          const MergeCheck fast = masks_can_merge(masks, i, j, rule);
          const MergeCheck slow =
              can_merge(c.columns[static_cast<std::size_t>(i)],
                        c.columns[static_cast<std::size_t>(j)], MergePolicy{rule, {}});
          CHECK(fast.ok == slow.ok);
          CHECK(fast.reason == slow.reason);
        }
      }
    }
  }
}

TEST_CASE("strict table matches per-pair scans") {
  Rng rng(223);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(20));
    const int cols = 2 + static_cast<int>(rng.below(12));
    const Circuit c = testing::random_circuit(n, cols, rng.unit_real(), rng.next_u64());
    const StrictTable table = build_strict_table(build_masks(c));
    for (int i = 0; i < cols; ++i) {
      for (int j = i + 1; j < cols; ++j) {
        CHECK(table(i, j) == strict_merge_ok(c, i, j));
      }
    }
  }
}

TEST_CASE("enumeration is identical across thread counts") {
  const Circuit c = testing::random_circuit(48, 200, 0.25, 999);
  const CircuitMasks masks = build_masks(c);
  const StrictTable table = build_strict_table(masks);
  const MergePolicy policy{OverlapRule::EqualAxisOverlap, OrderRule::StrictCommute};
  const auto pairs = enumerate_candidates(masks, policy, &table);
  CHECK(pairs == candidate_pairs_reference(c, policy));
  CHECK(pairs == enumerate_candidates(masks, policy, &table));
}
