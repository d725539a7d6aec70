#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tdopt/circuit.hpp"

namespace tdopt {

struct GenSpec {
  int n = 0;
  int c = 0;
  long long t_total = 0;  // 0 <= t_total <= n*c
  std::uint64_t seed = 0;

  friend bool operator==(const GenSpec&, const GenSpec&) = default;
};

// Synthetic circuit: t_total distinct cells sampled uniformly from the n x c
// grid (one rotation per qubit per column at most), axes uniform over
// {X, Y, Z}, each column's phase a fair coin. Fully determined by the seed;
// the draw order is the cell picks, then one axis per pick, then one phase
// per column.
Circuit generate(const GenSpec& spec);

struct SuiteProfile {
  std::string name;
  int n_min = 0, n_max = 0;
  int c_min = 0, c_max = 0;
  std::vector<double> density_grades;  // fractions of the n*c grid
  int instances = 0;
};

SuiteProfile small_profile(int instances = 100);
SuiteProfile moderate_profile(int instances = 100);
SuiteProfile large_profile(int instances = 50);

struct SuiteInstance {
  std::string id;
  double density_grade = 0.0;
  GenSpec spec;

  friend bool operator==(const SuiteInstance&, const SuiteInstance&) = default;
};

// Deterministic instance plan: each instance draws its dimensions from its
// own substream of master_seed and cycles through the density grades. The
// plan alone reproduces any instance in isolation.
std::vector<SuiteInstance> plan_suite(const SuiteProfile& profile, std::uint64_t master_seed);

}  // namespace tdopt
