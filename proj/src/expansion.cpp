#include "tdopt/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tdopt {

ColumnStats column_stats(const Column& column, int n) {
  if (n < 1) throw StructuralError("column_stats: qubit count must be positive");
  if (column.size() != n) {
    throw StructuralError("column_stats: column length " + std::to_string(column.size()) +
                          " does not match n=" + std::to_string(n));
  }
  ColumnStats stats;
  stats.t_count = column.t_count();
  stats.gamma = static_cast<double>(stats.t_count) / static_cast<double>(n);
  stats.mu = stats.gamma * (1.0 - stats.gamma);
  return stats;
}

int expansion_factor(const ColumnStats& stats, int n, double alpha) {
  if (n < 1) throw StructuralError("expansion_factor: qubit count must be positive");
  if (stats.t_count <= 0) return 1;
  const double gamma = stats.gamma;
  const double tau = std::max(1.0, std::pow(static_cast<double>(n), alpha) * std::exp(2.0 * gamma));
  const double raw = std::log(static_cast<double>(n) + 1.0) * (1.0 - gamma * gamma) *
                         std::pow(gamma, 1.0 + gamma) +
                     std::ceil(static_cast<double>(stats.t_count) / tau);
  const int rounded = static_cast<int>(std::floor(raw + 0.5));
  return std::clamp(rounded, 1, std::max(1, stats.t_count));
}

std::vector<double> local_density_scores(const Column& column, const ColumnStats& stats,
                                         int locality_k) {
  if (locality_k < 1 || locality_k > 9) {
    throw StructuralError("locality_k must be in [1, 9], got " + std::to_string(locality_k));
  }
  const int n = column.size();
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) {
    g[static_cast<std::size_t>(q)] =
        column.cells[static_cast<std::size_t>(q)].is_rotation() ? 1.0 : 0.0;
  }
  std::vector<double> prefix(static_cast<std::size_t>(n) + 1, 0.0);
  std::partial_sum(g.begin(), g.end(), prefix.begin() + 1);

  std::vector<double> p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int lo = std::max(0, i - locality_k);
    const int hi = std::min(n - 1, i + locality_k);
    const double neighborhood_sum =
        prefix[static_cast<std::size_t>(hi) + 1] - prefix[static_cast<std::size_t>(lo)];
    const double neighborhood_mean = neighborhood_sum / static_cast<double>(hi - lo + 1);
    const double gi = g[static_cast<std::size_t>(i)];
    p[static_cast<std::size_t>(i)] = gi + stats.mu * (gi - neighborhood_mean) +
                                     (1.0 - stats.gamma) * neighborhood_sum;
  }
  return p;
}

std::vector<double> split_scores(std::span<const double> p) {
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  if (!(total > 0.0)) {
    throw DegenerateInputError("split_scores: score vector sums to zero");
  }
  std::vector<double> s(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) s[i] = p[i] / total;
  return s;
}

std::vector<Column> expand_column(const Column& column, const ExpansionParams& params, int n) {
  const ColumnStats stats = column_stats(column, n);
  if (stats.t_count == 0) return {column};
  const int factor = expansion_factor(stats, n, params.alpha);
  if (factor <= 1) return {column};

  const std::vector<double> scores =
      split_scores(local_density_scores(column, stats, params.locality_k));
  std::vector<int> gates;
  gates.reserve(static_cast<std::size_t>(stats.t_count));
  for (int q = 0; q < n; ++q) {
    if (column.cells[static_cast<std::size_t>(q)].is_rotation()) gates.push_back(q);
  }
  std::sort(gates.begin(), gates.end(), [&](int a, int b) {
    const double sa = scores[static_cast<std::size_t>(a)];
    const double sb = scores[static_cast<std::size_t>(b)];
    if (sa != sb) return sa < sb;
    return a < b;
  });

  const int m = static_cast<int>(gates.size());
  const int base = m / factor;
  const int rem = m % factor;
  std::vector<Column> out;
  out.reserve(static_cast<std::size_t>(factor));
  int cursor = 0;
  for (int chunk = 0; chunk < factor; ++chunk) {
    const int len = base + (chunk < rem ? 1 : 0);
    Column sub = Column::identity(n);
    sub.phase = column.phase;
    for (int k = 0; k < len; ++k) {
      const int q = gates[static_cast<std::size_t>(cursor++)];
      sub.cells[static_cast<std::size_t>(q)] = column.cells[static_cast<std::size_t>(q)];
    }
    out.push_back(std::move(sub));
  }
  return out;
}

Circuit expand_circuit(const Circuit& circuit, const ExpansionParams& params) {
  if (!params.enabled) return circuit;
  Circuit out;
  out.n = circuit.n;
  out.residues = circuit.residues;
  for (const Column& col : circuit.columns) {
    std::vector<Column> subs = expand_column(col, params, circuit.n);
    for (Column& sub : subs) out.columns.push_back(std::move(sub));
  }
  return out;
}

}  // namespace tdopt
