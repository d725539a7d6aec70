#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tdopt/candidates.hpp"
#include "tdopt/circuit.hpp"
#include "tdopt/expansion.hpp"
#include "tdopt/rng.hpp"

namespace tdopt {

struct GaParams {
  int population = 20;
  int generations = 20;
  int elite = 4;
  double mutation_rate = 0.2;
  int max_rounds = 0;  // 0 = keep going until no merges remain
  std::uint64_t rng_seed = 1;
};

struct RoundLog {
  int round = 0;
  std::size_t pool_size = 0;
  int best_fitness = 0;
  std::vector<MergePair> applied;
  int t_depth_after = 0;
  int t_count_after = 0;
  int residues_extracted = 0;
};

// Number of pairs that survive an in-order sweep with a used-column set,
// where a pair survives only if both endpoints are fresh and the pair is
// mergeable under the policy (including the strict ordering condition when it
// applies). Re-validates every pair against the circuit.
int fitness(const Chromosome& chromosome, const Circuit& circuit, MergePolicy policy);

// First half of a (ceil), then the trailing half of b (floor), dropping any
// pair that reuses a column already taken.
Chromosome crossover(const Chromosome& a, const Chromosome& b);

// Reset mutation: with probability `rate` the offspring is replaced by a
// fresh random disjoint subset of the pool.
Chromosome mutate(Chromosome offspring, std::span<const MergePair> pool, double rate, Rng& rng);

struct EvolveResult {
  Chromosome best;
  int best_fitness = 0;
  std::size_t pool_size = 0;
  bool pool_empty = false;
  double generation_seconds = 0.0;  // summed over generations, for scaling probes
};

// One optimizer round: enumerate candidates, greedy-filter, seed, then evolve
// `generations` generations with top-k elitism, crossover and reset mutation.
// Returns the best chromosome seen in any generation. All random draws come
// from (rng_seed, round, generation, slot) substreams, so results do not
// depend on thread scheduling.
EvolveResult evolve_round(const Circuit& circuit, const GaParams& ga, const GreedyParams& greedy,
                          MergePolicy policy, int round);

struct OptimizeOutcome {
  Circuit circuit;
  std::vector<RoundLog> rounds;
  int expanded_t_depth = 0;    // depth right after the expansion pass
  bool reverted_to_input = false;
};

// Full pipeline: optional expansion pass, then rounds of
// evolve -> apply best plan -> canonicalize until the pool is empty, a round
// finds nothing, or max_rounds is hit. If the end state is no better than the
// input (possible when expansion over-splits a dense circuit), the input is
// returned unchanged and the outcome is flagged.
OptimizeOutcome optimize(const Circuit& input, const GaParams& ga, const GreedyParams& greedy,
                         const ExpansionParams& expansion, MergePolicy policy);

}  // namespace tdopt
