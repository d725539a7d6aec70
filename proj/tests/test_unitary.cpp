#include "tdopt/unitary.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tdopt/rng.hpp"
#include "test_helpers.hpp"

using namespace tdopt;
using testing::make_circuit;
using testing::make_column;

namespace {

constexpr MergePolicy kOverlap{OverlapRule::EqualAxisOverlap, OrderRule::StrictCommute};

double unitarity_defect(const DenseUnitary& u) {
  // Frobenius norm of U U^dagger - I.
  double sum = 0.0;
  for (std::size_t r = 0; r < u.dim; ++r) {
    for (std::size_t c = 0; c < u.dim; ++c) {
      std::complex<double> acc{0, 0};
      for (std::size_t k = 0; k < u.dim; ++k) acc += u.at(r, k) * std::conj(u.at(c, k));
      if (r == c) acc -= 1.0;
      sum += std::norm(acc);
    }
  }
  return std::sqrt(sum);
}

}  // namespace

TEST_CASE("column_unitary: all-identity column gives the identity matrix") {
  const DenseUnitary u = column_unitary(make_column("+..."), 3);
  CHECK(equivalent(u, identity_unitary(3), 1e-12).equivalent);
  for (std::size_t k = 0; k < u.dim; ++k) CHECK(u.at(k, k) == std::complex<double>{1, 0});
}

TEST_CASE("column_unitary: single Z matches the closed form") {
  const DenseUnitary u = column_unitary(make_column("+Z"), 1);
  const double theta = std::numbers::pi / 8.0;
  CHECK(std::abs(u.at(0, 0) - std::polar(1.0, theta)) < 1e-15);
  CHECK(std::abs(u.at(1, 1) - std::polar(1.0, -theta)) < 1e-15);
  CHECK(std::abs(u.at(0, 1)) < 1e-15);
  CHECK(std::abs(u.at(1, 0)) < 1e-15);
}

TEST_CASE("same-axis opposite-phase columns cancel to the identity") {
  const DenseUnitary a = column_unitary(make_column("+ZY"), 2);
  const DenseUnitary b = column_unitary(make_column("-ZY"), 2);
  CHECK(equivalent(matmul(a, b), identity_unitary(2), 1e-12).equivalent);
}

TEST_CASE("X and Z quarter-turn generators do not commute") {
  const DenseUnitary x = column_unitary(make_column("+X"), 1);
  const DenseUnitary z = column_unitary(make_column("+Z"), 1);
  CHECK_FALSE(equivalent(matmul(x, z), matmul(z, x), 1e-6).equivalent);
  CHECK_FALSE(equivalent(x, z, 1e-6).equivalent);
}

TEST_CASE("every constructed column unitary is unitary") {
  Rng rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(4));
    const Circuit c = testing::random_circuit(n, 1, 0.8, rng.next_u64());
    CHECK(unitarity_defect(column_unitary(c.columns[0], n)) < 1e-9);
  }
}

TEST_CASE("circuit_unitary matches the kron+matmul reference route") {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(4));
    Circuit c = testing::random_circuit(n, 4, 0.6, rng.next_u64());
    c.residues.push_back(CliffordResidue{0, PauliAxis::Y, PhaseSign::Minus, ResiduePark::End});
    const DenseUnitary fast = circuit_unitary(c, true);
    const DenseUnitary slow = circuit_unitary_reference(c, true);
    CHECK(equivalent(fast, slow, 1e-12).equivalent);
  }
}

TEST_CASE("commuting columns give the same unitary under any permutation") {
  Rng rng(23);
  int tested = 0;
  while (tested < 20) {
    const int n = 2 + static_cast<int>(rng.below(3));
    const int cols = 2 + static_cast<int>(rng.below(3));
    Circuit c = testing::random_circuit(n, cols, 0.4, rng.next_u64());
    bool all_commute = true;
    for (std::size_t i = 0; i < c.columns.size() && all_commute; ++i) {
      for (std::size_t j = i + 1; j < c.columns.size(); ++j) {
        if (!columns_commute(c.columns[i], c.columns[j])) {
          all_commute = false;
          break;
        }
      }
    }
    if (!all_commute) continue;
    const DenseUnitary base = circuit_unitary(c, false);
    for (int shuffle = 0; shuffle < 3; ++shuffle) {
      Circuit permuted = c;
      Rng perm_rng(rng.next_u64());
      perm_rng.shuffle(permuted.columns);
      CHECK(equivalent(circuit_unitary(permuted, false), base, 1e-12).equivalent);
    }
    ++tested;
  }
}

TEST_CASE("BCH collapse: product of commuting columns equals the summed generator") {
  // Per-qubit closed form of exp(i(A1+A2)) for same-axis supports: the angles
  // add, so a +pi/8 pair is one +pi/4 factor.
  const Column a = make_column("+ZX.");
  const Column b = make_column("+ZX.");
  REQUIRE(columns_commute(a, b));
  const DenseUnitary product = matmul(column_unitary(a, 3), column_unitary(b, 3));
  Circuit sum;
  sum.n = 3;
  sum.residues = {CliffordResidue{0, PauliAxis::Z, PhaseSign::Plus, ResiduePark::End},
                  CliffordResidue{1, PauliAxis::X, PhaseSign::Plus, ResiduePark::End}};
  CHECK(equivalent(product, circuit_unitary(sum, true), 1e-9).equivalent);

  Rng rng(31);
  int tested = 0;
  while (tested < 100) {
    const int n = 1 + static_cast<int>(rng.below(4));
    const Circuit pair = testing::random_circuit(n, 2, 0.7, rng.next_u64());
    Column lhs = pair.columns[0];
    Column rhs = pair.columns[1];
    rhs.phase = lhs.phase;  // equal signs keep the sum a pi/8-or-pi/4 form
    if (!columns_commute(lhs, rhs)) continue;
    const DenseUnitary two = matmul(column_unitary(lhs, n), column_unitary(rhs, n));
    // exp(i(A1+A2)) built per qubit: disjoint cells stay pi/8 columns,
    // coinciding same-axis cells become pi/4 residues.
    Circuit summed;
    summed.n = n;
    Column merged = Column::identity(n);
    merged.phase = lhs.phase;
    for (int q = 0; q < n; ++q) {
      const Cell ca = lhs.cells[static_cast<std::size_t>(q)];
      const Cell cb = rhs.cells[static_cast<std::size_t>(q)];
      if (ca.is_rotation() && cb.is_rotation()) {
        summed.residues.push_back(CliffordResidue{q, ca.axis(), lhs.phase, ResiduePark::End});
      } else if (ca.is_rotation() || cb.is_rotation()) {
        merged.cells[static_cast<std::size_t>(q)] = ca.is_rotation() ? ca : cb;
      }
    }
    summed.columns.push_back(merged);
    CHECK(equivalent(two, circuit_unitary(summed, true), 1e-9).equivalent);
    ++tested;
  }
}

TEST_CASE("merge soundness over random mergeable pairs") {
  Rng rng(47);
  int tested = 0;
  while (tested < 1000) {
    const int n = 1 + static_cast<int>(rng.below(6));
    Circuit pair = testing::random_circuit(n, 2, 0.6, rng.next_u64());
    pair.columns[1].phase = pair.columns[0].phase;
    const MergeCheck check = can_merge(pair.columns[0], pair.columns[1], kOverlap);
    if (!check.ok) continue;
    const Circuit merged =
        apply_merge_plan(pair, std::vector<MergePair>{{0, 1}}, kOverlap);
    const DenseUnitary lhs = circuit_unitary(merged, true);
    const DenseUnitary rhs = circuit_unitary(pair, false);
    CHECK(equivalent(lhs, rhs, 1e-9).equivalent);
    ++tested;
  }
}

TEST_CASE("equivalent ignores a global phase and nothing else") {
  const DenseUnitary u = circuit_unitary(testing::random_circuit(3, 3, 0.5, 5), false);
  CHECK(equivalent(u, u, 1e-12).equivalent);
  DenseUnitary rotated = u;
  const std::complex<double> phase = std::polar(1.0, std::numbers::pi / 3.0);
  for (auto& v : rotated.a) v *= phase;
  CHECK(equivalent(rotated, u, 1e-12).equivalent);
  CHECK(equivalent(u, rotated, 1e-12).equivalent);
}

TEST_CASE("equivalent rejects dimension mismatch and zero matrices") {
  DenseUnitary zero = identity_unitary(1);
  zero.a.assign(zero.a.size(), {0, 0});
  CHECK_THROWS_AS(equivalent(identity_unitary(1), zero, 1e-9), StructuralError);
  CHECK_THROWS_AS(equivalent(identity_unitary(1), identity_unitary(2), 1e-9), StructuralError);
}

TEST_CASE("capacity cap on oracle construction") {
  CHECK_THROWS_AS(identity_unitary(13), CapacityError);
  Circuit wide;
  wide.n = 13;
  CHECK_THROWS_AS(circuit_unitary(wide, false), CapacityError);
}

TEST_CASE("verify_optimization verdicts") {
  const Circuit c = testing::four_layer_single_merge();
  CHECK(verify_optimization(c, c, 1e-9).verdict == Verdict::Equivalent);

  const Circuit merged = apply_merge_plan(c, std::vector<MergePair>{{0, 1}}, kOverlap);
  CHECK(verify_optimization(c, merged, 1e-9).verdict == Verdict::Equivalent);

  // A corrupted merge (axis flipped) must be caught.
  Circuit corrupted = merged;
  corrupted.columns[0].cells[0] = Cell{PauliAxis::X};
  CHECK(verify_optimization(c, corrupted, 1e-9).verdict == Verdict::NotEquivalent);

  // A residue that could not float to the end makes the check unverifiable.
  Circuit stuck = merged;
  stuck.residues.push_back(CliffordResidue{0, PauliAxis::Z, PhaseSign::Plus, ResiduePark::Stuck});
  CHECK(verify_optimization(c, stuck, 1e-9).verdict == Verdict::Unverifiable);
}
