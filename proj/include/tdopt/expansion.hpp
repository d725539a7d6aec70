#pragma once

#include <span>
#include <vector>

#include "tdopt/circuit.hpp"

namespace tdopt {

struct ExpansionParams {
  double alpha = 0.3;    // exponent of the n^alpha scaling term
  int locality_k = 5;    // neighborhood radius for the per-qubit scores, 1..9
  bool enabled = true;
  bool each_round = false;  // re-expand before every optimizer round
};

struct ColumnStats {
  int t_count = 0;
  double gamma = 0.0;  // t_count / n
  double mu = 0.0;     // population variance of the 0/1 placement vector
};

ColumnStats column_stats(const Column& column, int n);

// Number of sub-columns a column is split into. Computed as
//   ln(n+1) * (1 - gamma^2) * gamma^(1+gamma) + ceil(t / tau),
//   tau = max(1, n^alpha * e^(2*gamma)),
// rounded half-up and clamped to [1, t]. 1 means no split.
int expansion_factor(const ColumnStats& stats, int n, double alpha);

// Per-qubit local density P_i: the gate indicator, a variance-weighted
// deviation from the neighborhood mean, and a sparsity-weighted neighborhood
// sum. The neighborhood is {j : |j - i| <= k}, truncated at the edges and
// including i itself.
std::vector<double> local_density_scores(const Column& column, const ColumnStats& stats,
                                         int locality_k);

// Normalizes P to sum to 1. Throws DegenerateInputError when sum(P) <= 0.
std::vector<double> split_scores(std::span<const double> p);

// Splits a column into expansion_factor sub-columns: rotation-bearing qubits
// sorted ascending by split score (ties by qubit index) and cut into
// contiguous chunks of near-equal size, larger chunks first. Sub-columns keep
// the parent phase; their supports partition the parent support.
std::vector<Column> expand_column(const Column& column, const ExpansionParams& params, int n);

// Expands every column in place (sub-columns stay adjacent). T-count and the
// circuit unitary are unchanged; T-depth grows to the sum of the factors.
Circuit expand_circuit(const Circuit& circuit, const ExpansionParams& params);

}  // namespace tdopt
