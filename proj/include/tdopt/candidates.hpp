#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tdopt/circuit.hpp"
#include "tdopt/kernels.hpp"

namespace tdopt {

struct GreedyParams {
  int t_max = 0;          // merged-column T budget; 0 resolves to n
  double delta_max = 1.0; // max density gap between paired columns
  int k_min = 8;          // pools this small skip the filter entirely
  double beta = 0.8;      // weight of the T-count term in the score
};

inline int resolve_t_max(const GreedyParams& params, int n) {
  return params.t_max > 0 ? params.t_max : n;
}

struct ScoredPair {
  int i = 0;
  int j = 0;
  double score = 0.0;
};

// An ordered set of index-disjoint merge pairs; the genome the optimizer
// breeds.
struct Chromosome {
  std::vector<MergePair> pairs;

  int size() const { return static_cast<int>(pairs.size()); }
  friend bool operator==(const Chromosome&, const Chromosome&) = default;
};

// All mergeable pairs i < j, lexicographic. Under StrictCommute the
// intervening-commutation condition applies as well.
std::vector<MergePair> candidate_pairs(const Circuit& circuit, MergePolicy policy);

// Cell-wise serial sweep with the same contract; kept as the reference the
// mask kernel is tested against.
std::vector<MergePair> candidate_pairs_reference(const Circuit& circuit, MergePolicy policy);

// Pools of size <= k_min pass through untouched. Larger pools are thresholded
// on density gap and combined T-count, scored
//   1 - |D_i - D_j| + beta * (t_max - T_i - T_j),
// sorted by descending score (ties lexicographic), and swept once selecting
// pairs whose endpoints are both unused. Output is index-disjoint.
std::vector<MergePair> greedy_filter(const Circuit& circuit, std::span<const MergePair> pairs,
                                     const GreedyParams& params);

// Initial population. Chromosome 0 is the deterministic density-pairing seed
// (densest columns paired with sparsest among the filtered pairs); the rest
// are random maximal disjoint subsets of the pool, each from its own
// substream of `seed`.
std::vector<Chromosome> seed_population(const Circuit& circuit,
                                        std::span<const MergePair> filtered, int population,
                                        std::uint64_t seed);

}  // namespace tdopt
