#include "tdopt/baselines.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "tdopt/candidates.hpp"

namespace tdopt {

namespace {

std::string state_key(const Circuit& circuit) {
  std::string key;
  key.reserve(circuit.columns.size() * (static_cast<std::size_t>(circuit.n) + 1));
  for (const Column& col : circuit.columns) {
    key.push_back(static_cast<char>(col.phase == PhaseSign::Plus ? '+' : '-'));
    for (const Cell cell : col.cells) {
      key.push_back(cell.is_identity() ? '.' : axis_char(cell.axis()));
    }
    key.push_back('|');
  }
  return key;
}

struct BruteForceSearch {
  MergePolicy policy;
  std::unordered_map<std::string, BruteForceResult> memo;

  BruteForceResult solve(const Circuit& circuit) {
    const std::string key = state_key(circuit);
    if (const auto it = memo.find(key); it != memo.end()) return it->second;

    BruteForceResult best;
    best.min_t_depth = t_depth(circuit);
    for (const MergePair& pair : candidate_pairs(circuit, policy)) {
      const Circuit next =
          canonicalize(apply_merge_plan(circuit, std::span(&pair, 1), policy));
      BruteForceResult sub = solve(next);
      if (sub.min_t_depth < best.min_t_depth) {
        best.min_t_depth = sub.min_t_depth;
        best.witness.clear();
        best.witness.push_back(pair);
        best.witness.insert(best.witness.end(), sub.witness.begin(), sub.witness.end());
      }
    }
    memo.emplace(key, best);
    return best;
  }
};

}  // namespace

BruteForceResult brute_force_optimum(const Circuit& circuit, MergePolicy policy,
                                     BruteForceLimits limits) {
  const Circuit start = canonicalize(circuit);
  if (t_depth(start) > limits.max_columns) {
    throw CapacityError("exhaustive search refused: " + std::to_string(t_depth(start)) +
                        " columns exceed the cap of " + std::to_string(limits.max_columns));
  }
  BruteForceSearch search{policy, {}};
  return search.solve(start);
}

namespace {

// True when `perm` can be reached from the identity ordering by adjacent
// transpositions of commuting columns: every inverted pair must commute.
bool permutation_reachable(const std::vector<Column>& window, const std::vector<int>& perm) {
  const int w = static_cast<int>(perm.size());
  for (int a = 0; a < w; ++a) {
    for (int b = a + 1; b < w; ++b) {
      if (perm[static_cast<std::size_t>(a)] > perm[static_cast<std::size_t>(b)] &&
          !columns_commute(window[static_cast<std::size_t>(perm[static_cast<std::size_t>(b)])],
                           window[static_cast<std::size_t>(perm[static_cast<std::size_t>(a)])])) {
        return false;
      }
    }
  }
  return true;
}

struct BlockResult {
  std::vector<Column> columns;
  std::vector<std::vector<CliffordResidue>> extracted;  // parallel to columns
  int merges = 0;
};

// Left-to-right greedy merge of adjacent mergeable columns, retrying the
// merged column against its new right neighbor.
BlockResult merge_block(std::vector<Column> block, MergePolicy policy) {
  BlockResult result;
  result.extracted.resize(block.size());
  std::size_t i = 0;
  while (i + 1 < block.size()) {
    if (can_merge(block[i], block[i + 1], policy).ok) {
      MergeResult m = merge(block[i], block[i + 1], policy);
      block[i] = std::move(m.merged);
      result.extracted[i].insert(result.extracted[i].end(), m.extracted.begin(),
                                 m.extracted.end());
      // Residues of the removed slot belong to the merged column now.
      result.extracted.erase(result.extracted.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      block.erase(block.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      ++result.merges;
    } else {
      ++i;
    }
  }
  result.columns = std::move(block);
  return result;
}

}  // namespace

std::pair<Circuit, LookaheadReport> lookahead_optimize(const Circuit& circuit,
                                                       const LookaheadParams& params) {
  if (params.window < 2 || params.window > 8) {
    throw StructuralError("lookahead window must be in [2, 8], got " +
                          std::to_string(params.window));
  }
  const Circuit start = canonicalize(circuit);
  LookaheadReport report;
  report.td_before = t_depth(start);
  report.tc_before = t_count(start);

  Circuit out;
  out.n = start.n;
  out.residues = start.residues;
  std::vector<ExtractionRecord> placed;

  std::size_t pos = 0;
  while (pos < start.columns.size()) {
    const int w = std::min<std::size_t>(params.window, start.columns.size() - pos);
    std::vector<Column> window(start.columns.begin() + static_cast<std::ptrdiff_t>(pos),
                               start.columns.begin() + static_cast<std::ptrdiff_t>(pos + w));

    std::vector<int> perm(static_cast<std::size_t>(w));
    for (int k = 0; k < w; ++k) perm[static_cast<std::size_t>(k)] = k;
    std::vector<int> best_perm = perm;
    int best_merges = -1;
    do {
      if (params.policy.order == OrderRule::StrictCommute &&
          !permutation_reachable(window, perm)) {
        continue;
      }
      ++report.permutations_tried;
      std::vector<Column> ordered;
      ordered.reserve(perm.size());
      for (const int k : perm) ordered.push_back(window[static_cast<std::size_t>(k)]);
      const BlockResult trial = merge_block(std::move(ordered), params.policy);
      if (trial.merges > best_merges) {
        best_merges = trial.merges;
        best_perm = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::vector<Column> ordered;
    ordered.reserve(best_perm.size());
    for (const int k : best_perm) ordered.push_back(window[static_cast<std::size_t>(k)]);
    BlockResult block = merge_block(std::move(ordered), params.policy);
    report.merges += block.merges;
    for (std::size_t k = 0; k < block.columns.size(); ++k) {
      if (!block.extracted[k].empty()) {
        placed.push_back({static_cast<int>(out.columns.size()), std::move(block.extracted[k])});
      }
      out.columns.push_back(std::move(block.columns[k]));
    }
    pos += static_cast<std::size_t>(w);
  }

  park_residues(out, std::move(placed));
  out = canonicalize(out);
  report.td_after = t_depth(out);
  report.tc_after = t_count(out);
  return {std::move(out), report};
}

}  // namespace tdopt
