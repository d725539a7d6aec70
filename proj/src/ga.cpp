#include "tdopt/ga.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include "tdopt/kernels.hpp"

namespace tdopt {

namespace {

constexpr std::uint64_t kSeedStream = 0x5eed;

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

// Used-set sweep over pairs already known to be individually valid. Within a
// round every chromosome is built from the validated pool, so this agrees
// with the full fitness() recheck.
int pool_fitness(const Chromosome& chromosome, std::vector<std::uint8_t>& used_scratch) {
  std::fill(used_scratch.begin(), used_scratch.end(), 0);
  int count = 0;
  for (const auto& [i, j] : chromosome.pairs) {
    if (used_scratch[static_cast<std::size_t>(i)] || used_scratch[static_cast<std::size_t>(j)]) {
      continue;
    }
    used_scratch[static_cast<std::size_t>(i)] = used_scratch[static_cast<std::size_t>(j)] = 1;
    ++count;
  }
  return count;
}

struct RoundSetup {
  std::vector<MergePair> pool;
};

RoundSetup build_round_setup(const Circuit& circuit, const GreedyParams& greedy,
                             MergePolicy policy) {
  RoundSetup setup;
  setup.pool = greedy_filter(circuit, candidate_pairs(circuit, policy), greedy);
  return setup;
}

EvolveResult evolve_over_pool(const Circuit& circuit, std::span<const MergePair> pool,
                              const GaParams& ga, int round) {
  EvolveResult result;
  result.pool_size = pool.size();
  if (pool.empty()) {
    result.pool_empty = true;
    return result;
  }
  if (ga.population < 1 || ga.generations < 1 || ga.elite < 1 || ga.elite > ga.population) {
    throw StructuralError("invalid GA parameters: population=" + std::to_string(ga.population) +
                          " generations=" + std::to_string(ga.generations) +
                          " elite=" + std::to_string(ga.elite));
  }

  const int c = static_cast<int>(circuit.columns.size());
  std::vector<Chromosome> population = seed_population(
      circuit, pool, ga.population,
      derive_seed(ga.rng_seed, {static_cast<std::uint64_t>(round), kSeedStream}));

  std::vector<int> fit(population.size(), 0);
  std::vector<int> rank(population.size(), 0);
  result.best_fitness = -1;

  const double started = now_seconds();
  for (int gen = 0; gen < ga.generations; ++gen) {
#pragma omp parallel
    {
      std::vector<std::uint8_t> used(static_cast<std::size_t>(c), 0);
#pragma omp for schedule(static)
      for (int k = 0; k < static_cast<int>(population.size()); ++k) {
        fit[static_cast<std::size_t>(k)] =
            pool_fitness(population[static_cast<std::size_t>(k)], used);
      }
    }

    std::iota(rank.begin(), rank.end(), 0);
    std::stable_sort(rank.begin(), rank.end(), [&](int a, int b) {
      return fit[static_cast<std::size_t>(a)] > fit[static_cast<std::size_t>(b)];
    });
    const int top = rank.front();
    if (fit[static_cast<std::size_t>(top)] > result.best_fitness) {
      result.best_fitness = fit[static_cast<std::size_t>(top)];
      result.best = population[static_cast<std::size_t>(top)];
    }
    if (gen + 1 == ga.generations) break;

    std::vector<Chromosome> next;
    next.resize(population.size());
    const int elite = std::min(ga.elite, static_cast<int>(population.size()));
    for (int k = 0; k < elite; ++k) {
      next[static_cast<std::size_t>(k)] = population[static_cast<std::size_t>(rank[k])];
    }
#pragma omp parallel for schedule(static)
    for (int slot = elite; slot < static_cast<int>(population.size()); ++slot) {
      Rng rng(derive_seed(ga.rng_seed,
                          {static_cast<std::uint64_t>(round), static_cast<std::uint64_t>(gen),
                           static_cast<std::uint64_t>(slot)}));
      const Chromosome& a = next[rng.below(static_cast<std::uint64_t>(elite))];
      const Chromosome& b = next[rng.below(static_cast<std::uint64_t>(elite))];
      next[static_cast<std::size_t>(slot)] = mutate(crossover(a, b), pool, ga.mutation_rate, rng);
    }
    population = std::move(next);
  }
  result.generation_seconds = now_seconds() - started;
  return result;
}

}  // namespace

int fitness(const Chromosome& chromosome, const Circuit& circuit, MergePolicy policy) {
  const int c = static_cast<int>(circuit.columns.size());
  std::vector<std::uint8_t> used(static_cast<std::size_t>(c), 0);
  int count = 0;
  for (const auto& [raw_i, raw_j] : chromosome.pairs) {
    if (raw_i < 0 || raw_j < 0 || raw_i >= c || raw_j >= c || raw_i == raw_j) {
      throw StructuralError("fitness: pair (" + std::to_string(raw_i) + "," +
                            std::to_string(raw_j) + ") out of range");
    }
    const int i = std::min(raw_i, raw_j);
    const int j = std::max(raw_i, raw_j);
    if (used[static_cast<std::size_t>(i)] || used[static_cast<std::size_t>(j)]) continue;
    if (!can_merge(circuit.columns[static_cast<std::size_t>(i)],
                   circuit.columns[static_cast<std::size_t>(j)], policy)
             .ok) {
      continue;
    }
    if (policy.order == OrderRule::StrictCommute && !strict_merge_ok(circuit, i, j)) continue;
    used[static_cast<std::size_t>(i)] = used[static_cast<std::size_t>(j)] = 1;
    ++count;
  }
  return count;
}

Chromosome crossover(const Chromosome& a, const Chromosome& b) {
  const std::size_t from_a = (a.pairs.size() + 1) / 2;
  const std::size_t from_b = b.pairs.size() / 2;

  int max_index = -1;
  for (const auto& [i, j] : a.pairs) max_index = std::max({max_index, i, j});
  for (const auto& [i, j] : b.pairs) max_index = std::max({max_index, i, j});

  Chromosome child;
  child.pairs.reserve(from_a + from_b);
  std::vector<std::uint8_t> taken(static_cast<std::size_t>(max_index) + 1, 0);
  auto keep = [&](const MergePair& p) {
    if (taken[static_cast<std::size_t>(p.first)] || taken[static_cast<std::size_t>(p.second)]) {
      return;
    }
    taken[static_cast<std::size_t>(p.first)] = taken[static_cast<std::size_t>(p.second)] = 1;
    child.pairs.push_back(p);
  };
  for (std::size_t k = 0; k < from_a; ++k) keep(a.pairs[k]);
  for (std::size_t k = b.pairs.size() - from_b; k < b.pairs.size(); ++k) keep(b.pairs[k]);
  return child;
}

Chromosome mutate(Chromosome offspring, std::span<const MergePair> pool, double rate, Rng& rng) {
  if (!rng.bernoulli(rate)) return offspring;
  std::vector<std::uint32_t> order(pool.size());
  for (std::size_t k = 0; k < pool.size(); ++k) order[k] = static_cast<std::uint32_t>(k);
  rng.shuffle(order);
  int max_index = 0;
  for (const auto& [i, j] : pool) max_index = std::max({max_index, i, j});
  std::vector<std::uint8_t> used(static_cast<std::size_t>(max_index) + 1, 0);
  Chromosome fresh;
  for (const std::uint32_t k : order) {
    const auto& [i, j] = pool[k];
    if (used[static_cast<std::size_t>(i)] || used[static_cast<std::size_t>(j)]) continue;
    used[static_cast<std::size_t>(i)] = used[static_cast<std::size_t>(j)] = 1;
    fresh.pairs.emplace_back(i, j);
  }
  return fresh;
}

EvolveResult evolve_round(const Circuit& circuit, const GaParams& ga, const GreedyParams& greedy,
                          MergePolicy policy, int round) {
  const RoundSetup setup = build_round_setup(circuit, greedy, policy);
  return evolve_over_pool(circuit, setup.pool, ga, round);
}

namespace {

struct PipelineResult {
  Circuit circuit;
  std::vector<RoundLog> rounds;
  int expanded_t_depth = 0;
};

PipelineResult run_pipeline(const Circuit& input, const GaParams& ga,
                            const GreedyParams& greedy, const ExpansionParams& expansion,
                            MergePolicy policy, std::uint64_t round_stream) {
  PipelineResult result;
  Circuit current = canonicalize(input);
  if (expansion.enabled) current = expand_circuit(current, expansion);
  result.expanded_t_depth = t_depth(current);

  int round = 0;
  while (ga.max_rounds == 0 || round < ga.max_rounds) {
    Circuit round_start = current;
    if (expansion.enabled && expansion.each_round && round > 0) {
      current = expand_circuit(current, expansion);
    }
    const RoundSetup setup = build_round_setup(current, greedy, policy);
    if (setup.pool.empty()) {
      current = std::move(round_start);
      break;
    }
    GaParams stream_ga = ga;
    stream_ga.rng_seed = derive_seed(ga.rng_seed, {round_stream});
    EvolveResult evolved = evolve_over_pool(current, setup.pool, stream_ga, round);
    if (evolved.best_fitness <= 0) {
      current = std::move(round_start);
      break;
    }

    const int residues_before = static_cast<int>(current.residues.size());
    current = canonicalize(apply_merge_plan(current, evolved.best.pairs, policy));
    if (expansion.each_round && t_depth(current) >= t_depth(round_start)) {
      // Re-expansion stopped paying for itself; undo the round and stop.
      current = std::move(round_start);
      break;
    }

    RoundLog log;
    log.round = round;
    log.pool_size = evolved.pool_size;
    log.best_fitness = evolved.best_fitness;
    log.applied = std::move(evolved.best.pairs);
    log.t_depth_after = t_depth(current);
    log.t_count_after = t_count(current);
    log.residues_extracted = static_cast<int>(current.residues.size()) - residues_before;
    result.rounds.push_back(std::move(log));
    ++round;
  }
  result.circuit = std::move(current);
  return result;
}

bool improves_on(const Circuit& candidate, const Circuit& reference) {
  if (t_depth(candidate) != t_depth(reference)) {
    return t_depth(candidate) < t_depth(reference);
  }
  return t_count(candidate) < t_count(reference);
}

}  // namespace

OptimizeOutcome optimize(const Circuit& input, const GaParams& ga, const GreedyParams& greedy,
                         const ExpansionParams& expansion, MergePolicy policy) {
  OptimizeOutcome outcome;
  PipelineResult result = run_pipeline(input, ga, greedy, expansion, policy, 0);
  outcome.expanded_t_depth = result.expanded_t_depth;

  // Splitting pays off on sparse circuits but can leave a dense circuit with
  // more layers than merging wins back. The merge-only pipeline is cheap by
  // comparison, so when expansion is on, run both and keep the better result
  // (ties go to the expansion branch).
  const Circuit reference = canonicalize(input);
  if (expansion.enabled) {
    ExpansionParams no_expansion = expansion;
    no_expansion.enabled = false;
    PipelineResult merge_only = run_pipeline(input, ga, greedy, no_expansion, policy, 1);
    if (improves_on(merge_only.circuit, result.circuit)) result = std::move(merge_only);
  }

  outcome.rounds = std::move(result.rounds);
  if (t_depth(result.circuit) > t_depth(reference) ||
      t_count(result.circuit) > t_count(reference)) {
    outcome.circuit = reference;
    outcome.reverted_to_input = true;
  } else {
    outcome.circuit = std::move(result.circuit);
  }
  return outcome;
}

}  // namespace tdopt
