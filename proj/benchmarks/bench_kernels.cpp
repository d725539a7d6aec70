// Timing comparison between the cell-wise serial reference implementations
// and the bit-packed / OpenMP kernels that back the optimizer's hot loops.
// Run with OMP_NUM_THREADS=1 to isolate the data-layout speedup from the
// threading speedup.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tdopt/benchgen.hpp"
#include "tdopt/candidates.hpp"
#include "tdopt/ga.hpp"
#include "tdopt/unitary.hpp"

using namespace tdopt;

namespace {

double time_best(const char* label, const char* variant, int repeats,
                 const std::function<std::size_t()>& body) {
  body();  // warm-up
  double best = 1e100;
  std::size_t sink = 0;
  for (int rep = 0; rep < repeats; ++rep) {
    const auto start = std::chrono::steady_clock::now();
    sink += body();
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (dt < best) best = dt;
  }
  std::printf("  %-28s %-18s %10.3f ms   (checksum %zu)\n", label, variant, best * 1e3, sink);
  return best;
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n\n", omp_get_max_threads());
#else
  std::printf("OpenMP: disabled at build time\n\n");
#endif
  const MergePolicy policy{OverlapRule::EqualAxisOverlap, OrderRule::StrictCommute};

  {
    const Circuit circuit = generate(GenSpec{100, 1200, 24000, 42});
    std::printf("candidate enumeration: n=%d, c=%zu\n", circuit.n, circuit.columns.size());
    const double ref = time_best("cell-wise sweep", "serial reference", 3, [&] {
      return candidate_pairs_reference(circuit, policy).size();
    });
    const CircuitMasks masks = build_masks(circuit);
    const StrictTable strict = build_strict_table(masks);
    const double fast = time_best("bit-packed sweep", "OpenMP kernel", 5, [&] {
      return enumerate_candidates(masks, policy, &strict).size();
    });
    const double build = time_best("mask + table build", "OpenMP kernel", 5, [&] {
      const CircuitMasks m = build_masks(circuit);
      return build_strict_table(m).ok.size();
    });
    std::printf("  speedup: %.1fx sweep-for-sweep, %.1fx including the rebuild\n\n", ref / fast,
                ref / (fast + build));
  }

  {
    const Circuit circuit = generate(GenSpec{9, 40, 160, 7});
    std::printf("dense unitary: n=%d, c=%zu (dim %d)\n", circuit.n, circuit.columns.size(),
                1 << circuit.n);
    const double ref = time_best("kron + naive matmul", "serial reference", 2, [&] {
      return static_cast<std::size_t>(
          std::abs(circuit_unitary_reference(circuit, false).a[0].real()) < 2.0);
    });
    const double fast = time_best("per-qubit factor apply", "OpenMP kernel", 3, [&] {
      return static_cast<std::size_t>(
          std::abs(circuit_unitary(circuit, false).a[0].real()) < 2.0);
    });
    std::printf("  speedup: %.1fx\n\n", ref / fast);
  }

  {
    const Circuit input = generate(GenSpec{80, 400, 9600, 11});
    std::printf("full optimize: n=%d, c=%zu\n", input.n, input.columns.size());
    time_best("optimize (defaults)", "pipeline", 1, [&] {
      const OptimizeOutcome out =
          optimize(input, GaParams{}, GreedyParams{}, ExpansionParams{}, MergePolicy{});
      return static_cast<std::size_t>(t_depth(out.circuit));
    });
  }
  return 0;
}
