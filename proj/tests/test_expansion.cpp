#include "tdopt/expansion.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

#include "tdopt/rng.hpp"
#include "tdopt/unitary.hpp"
#include "test_helpers.hpp"

using namespace tdopt;
using testing::make_column;

namespace {

// Straight re-evaluation of the three score terms, one qubit at a time, with
// no shared code with the implementation.
std::vector<double> reference_scores(const Column& column, int k) {
  const int n = column.size();
  double t = 0;
  for (int q = 0; q < n; ++q) t += column.cells[static_cast<std::size_t>(q)].is_rotation();
  const double gamma = t / n;
  const double mu = gamma * (1 - gamma);
  std::vector<double> out;
  for (int i = 0; i < n; ++i) {
    double sum = 0;
    int count = 0;
    for (int j = 0; j < n; ++j) {
      if (std::abs(j - i) <= k) {
        sum += column.cells[static_cast<std::size_t>(j)].is_rotation();
        ++count;
      }
    }
    const double gi = column.cells[static_cast<std::size_t>(i)].is_rotation();
    out.push_back(gi + mu * (gi - sum / count) + (1 - gamma) * sum);
  }
  return out;
}

}  // namespace

TEST_CASE("column_stats basics") {
  CHECK_THROWS_AS(column_stats(Column{}, 0), StructuralError);

  const ColumnStats empty = column_stats(Column::identity(10), 10);
  CHECK(empty.t_count == 0);
  CHECK(empty.gamma == 0.0);
  CHECK(empty.mu == 0.0);

  const ColumnStats full = column_stats(make_column("+ZZZZZZZZZZ"), 10);
  CHECK(full.t_count == 10);
  CHECK(full.gamma == 1.0);
  CHECK(full.mu == 0.0);

  const ColumnStats half = column_stats(make_column("+ZZZZZ....."), 10);
  CHECK(half.t_count == 5);
  CHECK(half.gamma == doctest::Approx(0.5));
  CHECK(half.mu == doctest::Approx(0.25));
}

TEST_CASE("expansion_factor: empty column never splits") {
  for (int n : {1, 10, 100}) {
    CHECK(expansion_factor(column_stats(Column::identity(n), n), n, 0.3) == 1);
  }
}

TEST_CASE("expansion_factor: saturated 100-qubit column splits in four") {
  // First term vanishes at gamma = 1; tau = 100^0.3 * e^2; E = ceil(100/tau).
  ColumnStats stats{100, 1.0, 0.0};
  const double tau = std::pow(100.0, 0.3) * std::exp(2.0);
  CHECK(static_cast<int>(std::ceil(100.0 / tau)) == 4);
  CHECK(expansion_factor(stats, 100, 0.3) == 4);
}

TEST_CASE("expansion_factor: half-dense 10-qubit column rounds up to two") {
  ColumnStats stats{5, 0.5, 0.25};
  const double tau = std::max(1.0, std::pow(10.0, 0.3) * std::exp(1.0));
  const double raw = std::log(11.0) * 0.75 * std::pow(0.5, 1.5) + std::ceil(5.0 / tau);
  CHECK(raw == doctest::Approx(1.6359).epsilon(1e-3));
  CHECK(expansion_factor(stats, 10, 0.3) == 2);
}

TEST_CASE("expansion_factor first term vanishes whenever gamma is 1") {
  for (int n : {2, 7, 31, 64}) {
    const ColumnStats stats{n, 1.0, 0.0};
    const double tau = std::max(1.0, std::pow(n, 0.3) * std::exp(2.0));
    const int expected = std::clamp(static_cast<int>(std::ceil(n / tau)), 1, n);
    CHECK(expansion_factor(stats, n, 0.3) == expected);
  }
}

TEST_CASE("local_density_scores edge cases") {
  const Column empty = Column::identity(10);
  for (double p : local_density_scores(empty, column_stats(empty, 10), 3)) CHECK(p == 0.0);

  const Column full = make_column("+XXXXX");
  for (double p : local_density_scores(full, column_stats(full, 5), 2)) {
    CHECK(p == doctest::Approx(1.0));
  }

  CHECK_THROWS_AS(local_density_scores(full, column_stats(full, 5), 0), StructuralError);
  CHECK_THROWS_AS(local_density_scores(full, column_stats(full, 5), 10), StructuralError);
}

TEST_CASE("local_density_scores match an independent evaluation") {
  const Column hand = make_column("+ZZ...");
  const auto got = local_density_scores(hand, column_stats(hand, 5), 1);
  const auto want = reference_scores(hand, 1);
  REQUIRE(got.size() == want.size());
  for (std::size_t q = 0; q < got.size(); ++q) CHECK(got[q] == doctest::Approx(want[q]));
  CHECK(got[0] == doctest::Approx(2.2));
  CHECK(got[1] == doctest::Approx(2.28));
  CHECK(got[2] == doctest::Approx(0.52));
  CHECK(got[3] == doctest::Approx(0.0));
  CHECK(got[4] == doctest::Approx(0.0));

  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(30));
    const int k = 1 + static_cast<int>(rng.below(9));
    const Circuit c = testing::random_circuit(n, 1, 0.4, rng.next_u64());
    const auto a = local_density_scores(c.columns[0], column_stats(c.columns[0], n), k);
    const auto b = reference_scores(c.columns[0], k);
    for (std::size_t q = 0; q < a.size(); ++q) CHECK(a[q] == doctest::Approx(b[q]));
  }
}

TEST_CASE("split_scores normalizes, preserves order, rejects zero input") {
  const std::vector<double> uniform{1, 1, 1, 1};
  const auto s = split_scores(uniform);
  for (double v : s) CHECK(v == doctest::Approx(0.25));

  const std::vector<double> ends{2, 0, 0, 2};
  const auto e = split_scores(ends);
  CHECK(e[0] == doctest::Approx(0.5));
  CHECK(e[1] == 0.0);
  CHECK(e[3] == doctest::Approx(0.5));

  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> p(1 + rng.below(20));
    for (auto& v : p) v = rng.unit_real();
    p[0] += 1e-6;
    const auto scores = split_scores(p);
    double total = 0;
    for (double v : scores) total += v;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    // Scale invariance.
    std::vector<double> scaled = p;
    for (auto& v : scaled) v *= 37.5;
    const auto rescored = split_scores(scaled);
    for (std::size_t k = 0; k < scores.size(); ++k) {
      CHECK(rescored[k] == doctest::Approx(scores[k]));
    }
  }

  CHECK_THROWS_AS(split_scores(std::vector<double>{0, 0, 0}), DegenerateInputError);
}

TEST_CASE("expand_column: no split is a fixpoint; splits partition the support") {
  const ExpansionParams params;
  const Column tiny = make_column("+Z.");
  const auto same = expand_column(tiny, params, 2);
  REQUIRE(same.size() == 1);
  CHECK(same[0] == tiny);

  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(60));
    const Circuit c = testing::random_circuit(n, 1, 0.3 + 0.7 * rng.unit_real(), rng.next_u64());
    const Column& parent = c.columns[0];
    const auto subs = expand_column(parent, params, n);
    const int factor = expansion_factor(column_stats(parent, n), n, params.alpha);
    CHECK(static_cast<int>(subs.size()) == factor);

    int total = 0;
    std::set<int> seen;
    std::size_t previous_size = subs.empty() ? 0 : subs[0].t_count();
    for (const Column& sub : subs) {
      CHECK(sub.phase == parent.phase);
      CHECK(static_cast<std::size_t>(sub.t_count()) <= previous_size);  // larger chunks first
      previous_size = static_cast<std::size_t>(sub.t_count());
      total += sub.t_count();
      for (int q = 0; q < n; ++q) {
        const Cell cell = sub.cells[static_cast<std::size_t>(q)];
        if (cell.is_identity()) continue;
        CHECK(cell == parent.cells[static_cast<std::size_t>(q)]);
        CHECK(seen.insert(q).second);  // supports pairwise disjoint
      }
    }
    CHECK(total == parent.t_count());
  }
}

TEST_CASE("expand_column: saturated 100-qubit column gives four quarters") {
  Column full = Column::identity(100);
  for (auto& cell : full.cells) cell = Cell{PauliAxis::Y};
  const auto subs = expand_column(full, ExpansionParams{}, 100);
  REQUIRE(subs.size() == 4);
  for (const Column& sub : subs) CHECK(sub.t_count() == 25);
}

TEST_CASE("expand_circuit preserves t_count and the unitary") {
  ExpansionParams params;
  SUBCASE("disabled pass is the identity") {
    params.enabled = false;
    const Circuit c = testing::random_circuit(8, 5, 0.9, 21);
    CHECK(expand_circuit(c, params) == c);
  }
  SUBCASE("all-identity circuit is unchanged up to canonicalization") {
    Circuit blank;
    blank.n = 4;
    blank.columns.assign(3, Column::identity(4));
    CHECK(canonicalize(expand_circuit(blank, params)) == canonicalize(blank));
  }
  SUBCASE("random circuits: structure and equivalence") {
    Rng rng(29);
    for (int trial = 0; trial < 100; ++trial) {
      const int n = 2 + static_cast<int>(rng.below(5));
      const int cols = 1 + static_cast<int>(rng.below(6));
      const Circuit c = testing::random_circuit(n, cols, 0.5 + 0.5 * rng.unit_real(),
                                                rng.next_u64());
      const Circuit expanded = expand_circuit(c, params);
      CHECK(t_count(expanded) == t_count(c));
      CHECK(equivalent(circuit_unitary(expanded, false), circuit_unitary(c, false), 1e-9)
                .equivalent);
    }
  }
}
