#include "tdopt/benchgen.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

#include "tdopt/circuit.hpp"

using namespace tdopt;

TEST_CASE("generate honors the spec exactly") {
  CHECK(t_depth(canonicalize(generate(GenSpec{5, 4, 0, 9}))) == 0);

  const Circuit saturated = generate(GenSpec{4, 6, 24, 9});
  CHECK(t_count(saturated) == 24);
  for (const Column& col : saturated.columns) CHECK(col.t_count() == 4);

  const Circuit a = generate(GenSpec{12, 30, 120, 77});
  CHECK(t_count(a) == 120);
  CHECK(a == generate(GenSpec{12, 30, 120, 77}));
  CHECK(a != generate(GenSpec{12, 30, 120, 78}));

  CHECK_THROWS_AS(generate(GenSpec{4, 6, 25, 9}), StructuralError);
  CHECK_THROWS_AS(generate(GenSpec{0, 6, 0, 9}), StructuralError);
}

TEST_CASE("generated phases are balanced") {
  int plus = 0, total = 0;
  for (int batch = 0; batch < 100; ++batch) {
    const Circuit c = generate(GenSpec{10, 100, 300, 1000 + static_cast<std::uint64_t>(batch)});
    for (const Column& col : c.columns) {
      plus += col.phase == PhaseSign::Plus ? 1 : 0;
      ++total;
    }
  }
  REQUIRE(total == 10000);
  const double fraction = static_cast<double>(plus) / total;
  CHECK(fraction > 0.48);
  CHECK(fraction < 0.52);
}

TEST_CASE("cell occupancy is uniform (chi-square smoke test)") {
  const int n = 10, c = 20;
  const long long t = 50;
  const int instances = 2000;
  std::vector<long long> counts(static_cast<std::size_t>(n * c), 0);
  for (int k = 0; k < instances; ++k) {
    const Circuit circuit = generate(GenSpec{n, c, t, 555 + static_cast<std::uint64_t>(k)});
    for (int col = 0; col < c; ++col) {
      for (int q = 0; q < n; ++q) {
        if (circuit.columns[static_cast<std::size_t>(col)]
                .cells[static_cast<std::size_t>(q)]
                .is_rotation()) {
          ++counts[static_cast<std::size_t>(col * n + q)];
        }
      }
    }
  }
  const double expected = static_cast<double>(t) * instances / (n * c);
  double chi2 = 0.0;
  for (const long long observed : counts) {
    const double d = static_cast<double>(observed) - expected;
    chi2 += d * d / expected;
  }
  // df = 199; the 0.999 quantile via the Wilson-Hilferty approximation is
  // ~265.6. Fixed seeds make this deterministic in practice.
  CHECK(chi2 < 265.6);
}

TEST_CASE("axes come out roughly uniform") {
  int axis_counts[3] = {0, 0, 0};
  const Circuit c = generate(GenSpec{20, 300, 3000, 31});
  for (const Column& col : c.columns) {
    for (const Cell cell : col.cells) {
      if (cell.is_rotation()) ++axis_counts[static_cast<int>(cell.axis())];
    }
  }
  for (const int count : axis_counts) {
    CHECK(count > 900);
    CHECK(count < 1100);
  }
}

TEST_CASE("plan_suite is deterministic and in range") {
  const SuiteProfile profile = moderate_profile(30);
  const auto plan = plan_suite(profile, 2024);
  REQUIRE(plan.size() == 30);
  CHECK(plan == plan_suite(profile, 2024));

  for (std::size_t k = 0; k < plan.size(); ++k) {
    const SuiteInstance& inst = plan[k];
    CHECK(inst.spec.n >= profile.n_min);
    CHECK(inst.spec.n <= profile.n_max);
    CHECK(inst.spec.c >= profile.c_min);
    CHECK(inst.spec.c <= profile.c_max);
    CHECK(inst.density_grade ==
          profile.density_grades[k % profile.density_grades.size()]);
    const long long cells = static_cast<long long>(inst.spec.n) * inst.spec.c;
    CHECK(inst.spec.t_total <= cells);
    CHECK(std::llabs(inst.spec.t_total -
                     static_cast<long long>(inst.density_grade * static_cast<double>(cells))) <= 1);
    const Circuit circuit = generate(inst.spec);
    CHECK(t_count(circuit) == inst.spec.t_total);
  }

  CHECK(plan_suite(profile, 2024) != plan_suite(profile, 2025));
  CHECK(plan_suite(small_profile(0), 1).empty());
}

TEST_CASE("suite instances differ from each other") {
  const auto plan = plan_suite(small_profile(10), 7);
  for (std::size_t a = 0; a < plan.size(); ++a) {
    for (std::size_t b = a + 1; b < plan.size(); ++b) {
      CHECK(plan[a].spec.seed != plan[b].spec.seed);
    }
  }
}
