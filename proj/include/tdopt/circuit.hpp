#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tdopt/errors.hpp"

namespace tdopt {

enum class PauliAxis : std::uint8_t { X = 0, Y = 1, Z = 2 };

constexpr char axis_char(PauliAxis a) {
  return a == PauliAxis::X ? 'X' : (a == PauliAxis::Y ? 'Y' : 'Z');
}

// Column-wide rotation sign: Plus is a +pi/8 layer, Minus a -pi/8 layer.
enum class PhaseSign : std::uint8_t { Plus = 0, Minus = 1 };

constexpr int phase_value(PhaseSign s) { return s == PhaseSign::Plus ? 1 : -1; }

// One lattice site of a column: identity, or a single-axis pi/8 rotation.
class Cell {
 public:
  constexpr Cell() = default;
  constexpr explicit Cell(PauliAxis axis)
      : code_(static_cast<std::uint8_t>(axis) + 1) {}

  constexpr bool is_rotation() const { return code_ != 0; }
  constexpr bool is_identity() const { return code_ == 0; }
  // Only meaningful when is_rotation().
  constexpr PauliAxis axis() const { return static_cast<PauliAxis>(code_ - 1); }

  friend constexpr bool operator==(Cell, Cell) = default;

 private:
  std::uint8_t code_ = 0;
};

// Where an extracted pi/4 rotation can be accounted without changing the
// circuit unitary, decided at extraction time: End when it commutes with
// every column after its extraction point, otherwise Start when it commutes
// with every column before it, otherwise Stuck (the verifier reports such
// circuits as unverifiable rather than guessing).
enum class ResiduePark : std::uint8_t { End = 0, Start, Stuck };

// A +-pi/4 single-qubit rotation peeled off when two same-axis pi/8 cells
// cancel during a merge. Kept on the circuit so T-count reductions stay
// auditable.
struct CliffordResidue {
  int qubit = 0;
  PauliAxis axis = PauliAxis::Z;
  PhaseSign phase = PhaseSign::Plus;
  ResiduePark park = ResiduePark::End;

  friend bool operator==(const CliffordResidue&, const CliffordResidue&) = default;
};

// One T-gate layer: a cell per qubit plus the shared phase sign.
struct Column {
  std::vector<Cell> cells;
  PhaseSign phase = PhaseSign::Plus;

  static Column identity(int n) {
    return Column{std::vector<Cell>(static_cast<std::size_t>(n)), PhaseSign::Plus};
  }

  int size() const { return static_cast<int>(cells.size()); }

  int t_count() const {
    int t = 0;
    for (const Cell c : cells) t += c.is_rotation() ? 1 : 0;
    return t;
  }

  bool is_all_identity() const { return t_count() == 0; }

  friend bool operator==(const Column&, const Column&) = default;
};

// Ordered columns over n qubits. Column 0 acts first. Residues accumulate as
// merges cancel cells; they are never part of the column sequence.
struct Circuit {
  int n = 0;
  std::vector<Column> columns;
  std::vector<CliffordResidue> residues;

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

// Two readings of "mergeable" for overlapping cells, and two readings of how
// a merged column may be placed.
enum class OverlapRule : std::uint8_t {
  DisjointOnly,      // supports must not intersect
  EqualAxisOverlap,  // same-axis overlaps cancel into a pi/4 residue
};

enum class OrderRule : std::uint8_t {
  PaperOrder,     // merged columns first, then the untouched ones
  StrictCommute,  // in-place replacement, gated on intervening commutation
};

struct MergePolicy {
  OverlapRule overlap = OverlapRule::EqualAxisOverlap;
  OrderRule order = OrderRule::StrictCommute;
};

enum class MergeBlock : std::uint8_t { Ok = 0, PhaseMismatch, AxisConflict };

const char* merge_block_name(MergeBlock b);

struct MergeCheck {
  bool ok = false;
  MergeBlock reason = MergeBlock::Ok;
};

// merge() called on a pair can_merge rejects.
struct MergeError : std::logic_error {
  explicit MergeError(MergeBlock r)
      : std::logic_error(std::string("pair is not mergeable: ") + merge_block_name(r)),
        reason(r) {}
  MergeBlock reason;
};

// Strict ordering rejected a merge because a column in between does not
// commute with the moving column.
struct CommutationError : std::logic_error {
  CommutationError(int blocking, int moving)
      : std::logic_error("column " + std::to_string(blocking) +
                         " does not commute with column " + std::to_string(moving)),
        blocking_column(blocking),
        moving_column(moving) {}
  int blocking_column;
  int moving_column;
};

using MergePair = std::pair<int, int>;

int t_count(const Circuit& circuit);
int t_depth(const Circuit& circuit);

// True iff on every qubit the two cells are identity or share an axis. For
// columns of single-qubit pi/8 rotations this is exactly [A, B] = 0.
bool columns_commute(const Column& a, const Column& b);

MergeCheck can_merge(const Column& a, const Column& b, MergePolicy policy);

struct MergeResult {
  Column merged;
  std::vector<CliffordResidue> extracted;  // qubit-ascending
};

// Element-wise product of two mergeable columns. Same-axis overlaps cancel
// into residues under EqualAxisOverlap. Throws MergeError otherwise.
MergeResult merge(const Column& a, const Column& b, MergePolicy policy);

// Intervening-commutation condition for moving column j next to column i
// (i < j): every column strictly between them must commute with column j.
bool strict_merge_ok(const Circuit& circuit, int i, int j);

// Applies pairwise index-disjoint merges. StrictCommute keeps every surviving
// column in place (merged column at i, j removed); PaperOrder lists merged
// columns first, then the rest. Extracted residues float out of the column
// sequence where possible: end-parked ones are appended in descending
// extraction position, start-parked ones after them in ascending position, so
// no residue ever has to move past another one.
Circuit apply_merge_plan(const Circuit& circuit, std::span<const MergePair> plan,
                         MergePolicy policy);

// Drops all-identity columns; everything else keeps its order.
Circuit canonicalize(const Circuit& circuit);

// Residues produced by one plan application, tagged with the position of the
// merged column they came out of in the resulting column sequence.
struct ExtractionRecord {
  int position = 0;
  std::vector<CliffordResidue> extracted;
};

// Assigns each extracted residue its parking side against circuit.columns and
// appends to circuit.residues (end-parked in descending extraction position,
// then start-parked in ascending position).
void park_residues(Circuit& circuit, std::vector<ExtractionRecord> records);

}  // namespace tdopt
