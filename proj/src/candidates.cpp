#include "tdopt/candidates.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "tdopt/rng.hpp"

namespace tdopt {

namespace {

std::uint64_t pair_key(int i, int j) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 32) |
         static_cast<std::uint32_t>(j);
}

}  // namespace

std::vector<MergePair> candidate_pairs(const Circuit& circuit, MergePolicy policy) {
  const CircuitMasks masks = build_masks(circuit);
  StrictTable strict;
  const StrictTable* strict_ptr = nullptr;
  if (policy.order == OrderRule::StrictCommute) {
    strict = build_strict_table(masks);
    strict_ptr = &strict;
  }
  return enumerate_candidates(masks, policy, strict_ptr);
}

std::vector<MergePair> candidate_pairs_reference(const Circuit& circuit, MergePolicy policy) {
  const int c = static_cast<int>(circuit.columns.size());
  std::vector<MergePair> out;
  for (int i = 0; i < c; ++i) {
    for (int j = i + 1; j < c; ++j) {
      if (!can_merge(circuit.columns[static_cast<std::size_t>(i)],
                     circuit.columns[static_cast<std::size_t>(j)], policy)
               .ok) {
        continue;
      }
      if (policy.order == OrderRule::StrictCommute && !strict_merge_ok(circuit, i, j)) continue;
      out.emplace_back(i, j);
    }
  }
  return out;
}

std::vector<MergePair> greedy_filter(const Circuit& circuit, std::span<const MergePair> pairs,
                                     const GreedyParams& params) {
  if (static_cast<int>(pairs.size()) <= params.k_min) {
    return {pairs.begin(), pairs.end()};
  }

  const int n = circuit.n;
  const int c = static_cast<int>(circuit.columns.size());
  const int t_max = resolve_t_max(params, n);
  std::vector<int> t(static_cast<std::size_t>(c));
  std::vector<double> density(static_cast<std::size_t>(c));
  for (int k = 0; k < c; ++k) {
    t[static_cast<std::size_t>(k)] = circuit.columns[static_cast<std::size_t>(k)].t_count();
    density[static_cast<std::size_t>(k)] =
        static_cast<double>(t[static_cast<std::size_t>(k)]) / static_cast<double>(n);
  }

  std::vector<ScoredPair> scored;
  scored.reserve(pairs.size());
  for (const auto& [i, j] : pairs) {
    const double gap = std::abs(density[static_cast<std::size_t>(i)] -
                                density[static_cast<std::size_t>(j)]);
    const int t_sum = t[static_cast<std::size_t>(i)] + t[static_cast<std::size_t>(j)];
    if (gap > params.delta_max || t_sum > t_max) continue;
    scored.push_back({i, j, 1.0 - gap + params.beta * static_cast<double>(t_max - t_sum)});
  }
  std::sort(scored.begin(), scored.end(), [](const ScoredPair& a, const ScoredPair& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });

  std::vector<std::uint8_t> used(static_cast<std::size_t>(c), 0);
  std::vector<MergePair> selected;
  for (const ScoredPair& sp : scored) {
    if (used[static_cast<std::size_t>(sp.i)] || used[static_cast<std::size_t>(sp.j)]) continue;
    used[static_cast<std::size_t>(sp.i)] = used[static_cast<std::size_t>(sp.j)] = 1;
    selected.emplace_back(sp.i, sp.j);
  }
  return selected;
}

namespace {

Chromosome density_pairing_seed(const Circuit& circuit, std::span<const MergePair> filtered) {
  std::unordered_set<std::uint64_t> pool;
  pool.reserve(filtered.size() * 2);
  for (const auto& [i, j] : filtered) pool.insert(pair_key(i, j));

  const int c = static_cast<int>(circuit.columns.size());
  std::vector<int> order(static_cast<std::size_t>(c));
  for (int k = 0; k < c; ++k) order[static_cast<std::size_t>(k)] = k;
  std::vector<int> t(static_cast<std::size_t>(c));
  for (int k = 0; k < c; ++k) {
    t[static_cast<std::size_t>(k)] = circuit.columns[static_cast<std::size_t>(k)].t_count();
  }
  // Densest first; sparsest end of the same array is scanned from the back.
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (t[static_cast<std::size_t>(a)] != t[static_cast<std::size_t>(b)]) {
      return t[static_cast<std::size_t>(a)] > t[static_cast<std::size_t>(b)];
    }
    return a < b;
  });

  std::vector<std::uint8_t> used(static_cast<std::size_t>(c), 0);
  Chromosome seed;
  for (std::size_t hi = 0; hi < order.size(); ++hi) {
    const int dense = order[hi];
    if (used[static_cast<std::size_t>(dense)]) continue;
    for (std::size_t lo = order.size(); lo-- > hi + 1;) {
      const int sparse = order[lo];
      if (used[static_cast<std::size_t>(sparse)]) continue;
      const int i = std::min(dense, sparse);
      const int j = std::max(dense, sparse);
      if (!pool.contains(pair_key(i, j))) continue;
      used[static_cast<std::size_t>(dense)] = used[static_cast<std::size_t>(sparse)] = 1;
      seed.pairs.emplace_back(i, j);
      break;
    }
  }
  return seed;
}

Chromosome random_disjoint_subset(std::span<const MergePair> pool, int columns, Rng& rng) {
  std::vector<std::uint32_t> order(pool.size());
  for (std::size_t k = 0; k < pool.size(); ++k) order[k] = static_cast<std::uint32_t>(k);
  rng.shuffle(order);
  std::vector<std::uint8_t> used(static_cast<std::size_t>(columns), 0);
  Chromosome out;
  for (const std::uint32_t k : order) {
    const auto& [i, j] = pool[k];
    if (used[static_cast<std::size_t>(i)] || used[static_cast<std::size_t>(j)]) continue;
    used[static_cast<std::size_t>(i)] = used[static_cast<std::size_t>(j)] = 1;
    out.pairs.emplace_back(i, j);
  }
  return out;
}

}  // namespace

std::vector<Chromosome> seed_population(const Circuit& circuit,
                                        std::span<const MergePair> filtered, int population,
                                        std::uint64_t seed) {
  if (population < 1) throw StructuralError("population size must be >= 1");
  std::vector<Chromosome> out;
  out.reserve(static_cast<std::size_t>(population));
  out.push_back(density_pairing_seed(circuit, filtered));
  const int c = static_cast<int>(circuit.columns.size());
  for (int k = 1; k < population; ++k) {
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(k)}));
    out.push_back(random_disjoint_subset(filtered, c, rng));
  }
  return out;
}

}  // namespace tdopt
