#include "tdopt/circuit.hpp"

#include <algorithm>

namespace tdopt {

namespace {

void require_same_length(const Column& a, const Column& b) {
  if (a.size() != b.size()) {
    throw StructuralError("column length mismatch: " + std::to_string(a.size()) +
                          " vs " + std::to_string(b.size()));
  }
}

// A pi/4 rotation on one qubit commutes with a column iff the column is
// identity there or rotates about the same axis.
bool residue_commutes_with(const CliffordResidue& r, const Column& col) {
  const Cell c = col.cells[static_cast<std::size_t>(r.qubit)];
  return c.is_identity() || c.axis() == r.axis;
}

}  // namespace

const char* merge_block_name(MergeBlock b) {
  switch (b) {
    case MergeBlock::Ok: return "Ok";
    case MergeBlock::PhaseMismatch: return "PhaseMismatch";
    default: return "AxisConflict";
  }
}

int t_count(const Circuit& circuit) {
  int total = 0;
  for (const Column& col : circuit.columns) total += col.t_count();
  return total;
}

int t_depth(const Circuit& circuit) {
  int depth = 0;
  for (const Column& col : circuit.columns) depth += col.is_all_identity() ? 0 : 1;
  return depth;
}

bool columns_commute(const Column& a, const Column& b) {
  require_same_length(a, b);
  for (int q = 0; q < a.size(); ++q) {
    const Cell ca = a.cells[static_cast<std::size_t>(q)];
    const Cell cb = b.cells[static_cast<std::size_t>(q)];
    if (ca.is_rotation() && cb.is_rotation() && ca.axis() != cb.axis()) return false;
  }
  return true;
}

MergeCheck can_merge(const Column& a, const Column& b, MergePolicy policy) {
  require_same_length(a, b);
  if (a.phase != b.phase) return {false, MergeBlock::PhaseMismatch};
  for (int q = 0; q < a.size(); ++q) {
    const Cell ca = a.cells[static_cast<std::size_t>(q)];
    const Cell cb = b.cells[static_cast<std::size_t>(q)];
    if (!ca.is_rotation() || !cb.is_rotation()) continue;
    if (policy.overlap == OverlapRule::DisjointOnly || ca.axis() != cb.axis()) {
      return {false, MergeBlock::AxisConflict};
    }
  }
  return {true, MergeBlock::Ok};
}

MergeResult merge(const Column& a, const Column& b, MergePolicy policy) {
  const MergeCheck check = can_merge(a, b, policy);
  if (!check.ok) throw MergeError(check.reason);

  MergeResult result;
  result.merged.phase = a.phase;
  result.merged.cells.resize(a.cells.size());
  for (int q = 0; q < a.size(); ++q) {
    const Cell ca = a.cells[static_cast<std::size_t>(q)];
    const Cell cb = b.cells[static_cast<std::size_t>(q)];
    if (ca.is_rotation() && cb.is_rotation()) {
      // Equal axis by the check above: the pair cancels into a pi/4 residue.
      result.merged.cells[static_cast<std::size_t>(q)] = Cell{};
      result.extracted.push_back(CliffordResidue{q, ca.axis(), a.phase, ResiduePark::End});
    } else {
      result.merged.cells[static_cast<std::size_t>(q)] = ca.is_rotation() ? ca : cb;
    }
  }
  return result;
}

bool strict_merge_ok(const Circuit& circuit, int i, int j) {
  for (int k = i + 1; k < j; ++k) {
    if (!columns_commute(circuit.columns[static_cast<std::size_t>(k)],
                         circuit.columns[static_cast<std::size_t>(j)])) {
      return false;
    }
  }
  return true;
}

Circuit apply_merge_plan(const Circuit& circuit, std::span<const MergePair> plan,
                         MergePolicy policy) {
  const int c = static_cast<int>(circuit.columns.size());
  std::vector<std::uint8_t> used(static_cast<std::size_t>(c), 0);
  for (const auto& [i, j] : plan) {
    if (i < 0 || j < 0 || i >= c || j >= c || i == j) {
      throw StructuralError("merge pair (" + std::to_string(i) + "," +
                            std::to_string(j) + ") out of range");
    }
    if (used[static_cast<std::size_t>(i)] || used[static_cast<std::size_t>(j)]) {
      throw PlanError("merge plan reuses column " +
                      std::to_string(used[static_cast<std::size_t>(i)] ? i : j));
    }
    used[static_cast<std::size_t>(i)] = used[static_cast<std::size_t>(j)] = 1;
  }

  std::vector<ExtractionRecord> applied;
  applied.reserve(plan.size());

  Circuit next;
  next.n = circuit.n;
  next.residues = circuit.residues;

  if (policy.order == OrderRule::StrictCommute) {
    std::vector<Column> merged_at(static_cast<std::size_t>(c));
    std::vector<std::vector<CliffordResidue>> extracted_at(static_cast<std::size_t>(c));
    std::vector<std::uint8_t> is_merged(static_cast<std::size_t>(c), 0);
    std::vector<std::uint8_t> is_dropped(static_cast<std::size_t>(c), 0);
    for (const auto& [raw_i, raw_j] : plan) {
      const int i = std::min(raw_i, raw_j);
      const int j = std::max(raw_i, raw_j);
      for (int k = i + 1; k < j; ++k) {
        if (!columns_commute(circuit.columns[static_cast<std::size_t>(k)],
                             circuit.columns[static_cast<std::size_t>(j)])) {
          throw CommutationError(k, j);
        }
      }
      MergeResult m = merge(circuit.columns[static_cast<std::size_t>(i)],
                            circuit.columns[static_cast<std::size_t>(j)], policy);
      merged_at[static_cast<std::size_t>(i)] = std::move(m.merged);
      extracted_at[static_cast<std::size_t>(i)] = std::move(m.extracted);
      is_merged[static_cast<std::size_t>(i)] = 1;
      is_dropped[static_cast<std::size_t>(j)] = 1;
    }
    for (int k = 0; k < c; ++k) {
      if (is_dropped[static_cast<std::size_t>(k)]) continue;
      if (is_merged[static_cast<std::size_t>(k)]) {
        applied.push_back({static_cast<int>(next.columns.size()),
                           std::move(extracted_at[static_cast<std::size_t>(k)])});
        next.columns.push_back(std::move(merged_at[static_cast<std::size_t>(k)]));
      } else {
        next.columns.push_back(circuit.columns[static_cast<std::size_t>(k)]);
      }
    }
  } else {
    for (const auto& [raw_i, raw_j] : plan) {
      const int i = std::min(raw_i, raw_j);
      const int j = std::max(raw_i, raw_j);
      MergeResult m = merge(circuit.columns[static_cast<std::size_t>(i)],
                            circuit.columns[static_cast<std::size_t>(j)], policy);
      applied.push_back({static_cast<int>(next.columns.size()), std::move(m.extracted)});
      next.columns.push_back(std::move(m.merged));
    }
    for (int k = 0; k < c; ++k) {
      if (!used[static_cast<std::size_t>(k)]) {
        next.columns.push_back(circuit.columns[static_cast<std::size_t>(k)]);
      }
    }
  }

  park_residues(next, std::move(applied));
  return next;
}

Circuit canonicalize(const Circuit& circuit) {
  Circuit out;
  out.n = circuit.n;
  out.residues = circuit.residues;
  out.columns.reserve(circuit.columns.size());
  for (const Column& col : circuit.columns) {
    if (!col.is_all_identity()) out.columns.push_back(col);
  }
  return out;
}

void park_residues(Circuit& circuit, std::vector<ExtractionRecord> records) {
  std::stable_sort(records.begin(), records.end(),
                   [](const ExtractionRecord& a, const ExtractionRecord& b) {
                     return a.position > b.position;
                   });
  std::vector<CliffordResidue> starts;
  for (ExtractionRecord& entry : records) {
    for (CliffordResidue& r : entry.extracted) {
      bool to_end = true;
      for (std::size_t k = static_cast<std::size_t>(entry.position) + 1;
           k < circuit.columns.size(); ++k) {
        if (!residue_commutes_with(r, circuit.columns[k])) {
          to_end = false;
          break;
        }
      }
      if (to_end) {
        r.park = ResiduePark::End;
        circuit.residues.push_back(r);
        continue;
      }
      bool to_start = true;
      for (std::size_t k = 0; k < static_cast<std::size_t>(entry.position); ++k) {
        if (!residue_commutes_with(r, circuit.columns[k])) {
          to_start = false;
          break;
        }
      }
      r.park = to_start ? ResiduePark::Start : ResiduePark::Stuck;
      starts.push_back(r);
    }
  }
  // records were walked in descending position, so reverse restores the
  // ascending park order the start side needs.
  circuit.residues.insert(circuit.residues.end(), starts.rbegin(), starts.rend());
}

}  // namespace tdopt
