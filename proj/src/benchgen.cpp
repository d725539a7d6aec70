#include "tdopt/benchgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "tdopt/rng.hpp"

namespace tdopt {

Circuit generate(const GenSpec& spec) {
  if (spec.n < 1 || spec.c < 0) {
    throw StructuralError("generate: need n >= 1 and c >= 0");
  }
  const long long cells = static_cast<long long>(spec.n) * spec.c;
  if (spec.t_total < 0 || spec.t_total > cells) {
    throw StructuralError("generate: t_total " + std::to_string(spec.t_total) +
                          " outside [0, " + std::to_string(cells) + "]");
  }

  Rng rng(spec.seed);
  Circuit circuit;
  circuit.n = spec.n;
  circuit.columns.assign(static_cast<std::size_t>(spec.c), Column::identity(spec.n));

  // Partial Fisher-Yates over the flat grid picks t_total distinct cells.
  std::vector<std::uint32_t> grid(static_cast<std::size_t>(cells));
  for (std::size_t k = 0; k < grid.size(); ++k) grid[k] = static_cast<std::uint32_t>(k);
  for (long long k = 0; k < spec.t_total; ++k) {
    const long long j = k + static_cast<long long>(rng.below(static_cast<std::uint64_t>(cells - k)));
    std::swap(grid[static_cast<std::size_t>(k)], grid[static_cast<std::size_t>(j)]);
  }
  for (long long k = 0; k < spec.t_total; ++k) {
    const std::uint32_t cell = grid[static_cast<std::size_t>(k)];
    const int col = static_cast<int>(cell) / spec.n;
    const int qubit = static_cast<int>(cell) % spec.n;
    const auto axis = static_cast<PauliAxis>(rng.below(3));
    circuit.columns[static_cast<std::size_t>(col)].cells[static_cast<std::size_t>(qubit)] =
        Cell{axis};
  }
  for (Column& col : circuit.columns) {
    col.phase = rng.below(2) == 0 ? PhaseSign::Plus : PhaseSign::Minus;
  }
  return circuit;
}

SuiteProfile small_profile(int instances) {
  return {"small", 10, 20, 30, 60, {0.1, 0.3, 0.5, 0.7, 1.0}, instances};
}

SuiteProfile moderate_profile(int instances) {
  return {"moderate", 60, 70, 100, 200, {0.3, 0.5, 0.7}, instances};
}

SuiteProfile large_profile(int instances) {
  return {"large", 90, 100, 450, 550, {0.3, 0.5, 0.7}, instances};
}

std::vector<SuiteInstance> plan_suite(const SuiteProfile& profile, std::uint64_t master_seed) {
  if (profile.n_min < 1 || profile.n_max < profile.n_min || profile.c_min < 1 ||
      profile.c_max < profile.c_min || profile.density_grades.empty() || profile.instances < 0) {
    throw StructuralError("plan_suite: malformed profile '" + profile.name + "'");
  }
  std::vector<SuiteInstance> plan;
  plan.reserve(static_cast<std::size_t>(profile.instances));
  for (int k = 0; k < profile.instances; ++k) {
    Rng dims(derive_seed(master_seed, {static_cast<std::uint64_t>(k)}));
    SuiteInstance inst;
    inst.spec.n = profile.n_min +
                  static_cast<int>(dims.below(static_cast<std::uint64_t>(profile.n_max - profile.n_min + 1)));
    inst.spec.c = profile.c_min +
                  static_cast<int>(dims.below(static_cast<std::uint64_t>(profile.c_max - profile.c_min + 1)));
    inst.density_grade =
        profile.density_grades[static_cast<std::size_t>(k) % profile.density_grades.size()];
    const long long cells = static_cast<long long>(inst.spec.n) * inst.spec.c;
    inst.spec.t_total =
        std::clamp(static_cast<long long>(std::llround(inst.density_grade * static_cast<double>(cells))),
                   0ll, cells);
    inst.spec.seed = derive_seed(master_seed, {static_cast<std::uint64_t>(k), 1});
    char id[64];
    std::snprintf(id, sizeof id, "%s-%03d", profile.name.c_str(), k);
    inst.id = id;
    plan.push_back(std::move(inst));
  }
  return plan;
}

}  // namespace tdopt
