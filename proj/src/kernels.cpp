#include "tdopt/kernels.hpp"

#include <cstddef>

namespace tdopt {

namespace {

struct ColumnSpan {
  const std::uint64_t* x;
  const std::uint64_t* y;
  const std::uint64_t* z;
};

inline ColumnSpan column_span(const CircuitMasks& m, int c) {
  const std::size_t off = static_cast<std::size_t>(c) * static_cast<std::size_t>(m.words);
  return {m.x.data() + off, m.y.data() + off, m.z.data() + off};
}

// Any qubit where both columns rotate about different axes.
inline bool axis_conflict(const CircuitMasks& m, int i, int j) {
  const ColumnSpan a = column_span(m, i);
  const ColumnSpan b = column_span(m, j);
  std::uint64_t bad = 0;
  for (int w = 0; w < m.words; ++w) {
    bad |= a.x[w] & (b.y[w] | b.z[w]);
    bad |= a.y[w] & (b.x[w] | b.z[w]);
    bad |= a.z[w] & (b.x[w] | b.y[w]);
  }
  return bad != 0;
}

inline bool supports_overlap(const CircuitMasks& m, int i, int j) {
  const ColumnSpan a = column_span(m, i);
  const ColumnSpan b = column_span(m, j);
  std::uint64_t hit = 0;
  for (int w = 0; w < m.words; ++w) {
    hit |= (a.x[w] | a.y[w] | a.z[w]) & (b.x[w] | b.y[w] | b.z[w]);
  }
  return hit != 0;
}

}  // namespace

CircuitMasks build_masks(const Circuit& circuit) {
  CircuitMasks m;
  m.n = circuit.n;
  m.words = circuit.n == 0 ? 1 : (circuit.n + 63) / 64;
  const std::size_t c = circuit.columns.size();
  m.x.assign(c * static_cast<std::size_t>(m.words), 0);
  m.y.assign(c * static_cast<std::size_t>(m.words), 0);
  m.z.assign(c * static_cast<std::size_t>(m.words), 0);
  m.phase.resize(c);
  m.t_counts.resize(c);
  for (std::size_t col = 0; col < c; ++col) {
    const Column& column = circuit.columns[col];
    if (column.size() != circuit.n) {
      throw StructuralError("column " + std::to_string(col) + " has length " +
                            std::to_string(column.size()) + ", expected " +
                            std::to_string(circuit.n));
    }
    const std::size_t off = col * static_cast<std::size_t>(m.words);
    int t = 0;
    for (int q = 0; q < circuit.n; ++q) {
      const Cell cell = column.cells[static_cast<std::size_t>(q)];
      if (!cell.is_rotation()) continue;
      ++t;
      const std::size_t word = off + static_cast<std::size_t>(q) / 64;
      const std::uint64_t bit = 1ull << (q % 64);
      switch (cell.axis()) {
        case PauliAxis::X: m.x[word] |= bit; break;
        case PauliAxis::Y: m.y[word] |= bit; break;
        case PauliAxis::Z: m.z[word] |= bit; break;
      }
    }
    m.phase[col] = static_cast<std::uint8_t>(column.phase);
    m.t_counts[col] = t;
  }
  return m;
}

bool masks_commute(const CircuitMasks& m, int i, int j) {
  return !axis_conflict(m, i, j);
}

MergeCheck masks_can_merge(const CircuitMasks& m, int i, int j, OverlapRule rule) {
  if (m.phase[static_cast<std::size_t>(i)] != m.phase[static_cast<std::size_t>(j)]) {
    return {false, MergeBlock::PhaseMismatch};
  }
  if (rule == OverlapRule::DisjointOnly) {
    if (supports_overlap(m, i, j)) return {false, MergeBlock::AxisConflict};
  } else if (axis_conflict(m, i, j)) {
    return {false, MergeBlock::AxisConflict};
  }
  return {true, MergeBlock::Ok};
}

StrictTable build_strict_table(const CircuitMasks& m) {
  const int c = m.columns();
  StrictTable table;
  table.c = c;
  table.ok.assign(static_cast<std::size_t>(c) * static_cast<std::size_t>(c), 0);
  if (c == 0) return table;

  std::vector<std::uint8_t> comm(static_cast<std::size_t>(c) * static_cast<std::size_t>(c), 0);
#pragma omp parallel for schedule(dynamic, 16)
  for (int i = 0; i < c; ++i) {
    for (int j = i + 1; j < c; ++j) {
      const std::uint8_t v = masks_commute(m, i, j) ? 1 : 0;
      comm[static_cast<std::size_t>(i) * c + j] = v;
      comm[static_cast<std::size_t>(j) * c + i] = v;
    }
  }

#pragma omp parallel for schedule(static)
  for (int j = 1; j < c; ++j) {
    std::uint8_t ok = 1;
    table.ok[static_cast<std::size_t>(j - 1) * c + j] = 1;
    for (int i = j - 2; i >= 0; --i) {
      ok &= comm[static_cast<std::size_t>(i + 1) * c + j];
      table.ok[static_cast<std::size_t>(i) * c + j] = ok;
    }
  }
  return table;
}

std::vector<MergePair> enumerate_candidates(const CircuitMasks& m, MergePolicy policy,
                                            const StrictTable* strict) {
  const int c = m.columns();
  std::vector<std::vector<MergePair>> per_row(static_cast<std::size_t>(c));
#pragma omp parallel for schedule(dynamic, 8)
  for (int i = 0; i < c; ++i) {
    auto& row = per_row[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < c; ++j) {
      if (!masks_can_merge(m, i, j, policy.overlap).ok) continue;
      if (policy.order == OrderRule::StrictCommute && strict && !(*strict)(i, j)) continue;
      row.emplace_back(i, j);
    }
  }
  std::size_t total = 0;
  for (const auto& row : per_row) total += row.size();
  std::vector<MergePair> out;
  out.reserve(total);
  for (const auto& row : per_row) out.insert(out.end(), row.begin(), row.end());
  return out;
}

}  // namespace tdopt
