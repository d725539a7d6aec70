#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tdopt/commands.hpp"

namespace {

using tdopt::OptimizeConfig;

// Shared tunables for optimize/compare/bench; every flag can also come from a
// config file (--config) or a TDOPT_* environment variable.
void add_config_options(CLI::App* cmd, OptimizeConfig* config, int* window) {
  cmd->add_option("--seed", config->ga.rng_seed, "Master RNG seed")->envname("TDOPT_SEED");
  cmd->add_option("--alpha", config->expansion.alpha, "Expansion scaling exponent")
      ->envname("TDOPT_ALPHA");
  cmd->add_option("--locality", config->expansion.locality_k,
                  "Neighborhood radius for split scores (1-9)")
      ->envname("TDOPT_LOCALITY");
  cmd->add_flag("--no-expansion", [config](std::int64_t) { config->expansion.enabled = false; },
                "Disable the column expansion pass");
  cmd->add_flag("--expand-each-round",
                [config](std::int64_t) { config->expansion.each_round = true; },
                "Re-run expansion before every round");
  cmd->add_option("--beta", config->greedy.beta, "T-count weight in the greedy score")
      ->envname("TDOPT_BETA");
  cmd->add_option("--t-max", config->greedy.t_max, "Merged-column T budget (0 = qubit count)")
      ->envname("TDOPT_T_MAX");
  cmd->add_option("--delta-max", config->greedy.delta_max, "Max density gap for greedy pairs")
      ->envname("TDOPT_DELTA_MAX");
  cmd->add_option("--k-min", config->greedy.k_min, "Pool size below which the filter passes through")
      ->envname("TDOPT_K_MIN");
  cmd->add_option("--population", config->ga.population, "Population size")
      ->envname("TDOPT_POPULATION");
  cmd->add_option("--generations", config->ga.generations, "Generations per round")
      ->envname("TDOPT_GENERATIONS");
  cmd->add_option("--elite", config->ga.elite, "Elites kept per generation")
      ->envname("TDOPT_ELITE");
  cmd->add_option("--mutation", config->ga.mutation_rate, "Reset-mutation probability")
      ->envname("TDOPT_MUTATION");
  cmd->add_option("--max-rounds", config->ga.max_rounds, "Round cap (0 = until no merges)")
      ->envname("TDOPT_MAX_ROUNDS");
  cmd->add_option_function<std::string>(
         "--policy",
         [config](const std::string& value) {
           if (value == "disjoint") {
             config->policy.overlap = tdopt::OverlapRule::DisjointOnly;
           } else if (value == "overlap") {
             config->policy.overlap = tdopt::OverlapRule::EqualAxisOverlap;
           } else {
             throw CLI::ValidationError("--policy", "expected disjoint|overlap");
           }
         },
         "Overlap rule: disjoint|overlap")
      ->envname("TDOPT_POLICY");
  cmd->add_option_function<std::string>(
         "--order",
         [config](const std::string& value) {
           if (value == "paper") {
             config->policy.order = tdopt::OrderRule::PaperOrder;
           } else if (value == "strict") {
             config->policy.order = tdopt::OrderRule::StrictCommute;
           } else {
             throw CLI::ValidationError("--order", "expected paper|strict");
           }
         },
         "Merged-column placement: paper|strict")
      ->envname("TDOPT_ORDER");
  if (window) {
    cmd->add_option("--window", *window, "Lookahead window (2-8)")->envname("TDOPT_WINDOW");
  }
  cmd->set_config("--config", "", "Read options from a config file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"T-layer circuit optimizer: merges commuting pi/8 rotation columns"};
  app.require_subcommand(1);

  tdopt::GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Generate a random circuit document");
  generate->add_option("--n", gen.n, "Qubit count")->required();
  generate->add_option("--c", gen.c, "Column count")->required();
  generate->add_option("--t-total", gen.t_total, "Exact number of T gates");
  generate->add_option("--density", gen.density, "T-gate fraction of the n*c grid");
  generate->add_option("--seed", gen.seed, "RNG seed")->envname("TDOPT_SEED");
  generate->add_option("--out", gen.out, "Output path (stdout when omitted)");

  tdopt::OptimizeArgs opt;
  auto* optimize = app.add_subcommand("optimize", "Reduce T-depth and T-count of a circuit");
  optimize->add_option("input", opt.input, "Circuit document")->required();
  optimize->add_option("--out", opt.out_circuit, "Optimized circuit path");
  optimize->add_option("--report", opt.out_report, "JSON report path");
  optimize->add_option("--csv", opt.out_csv, "Append an aggregate CSV row here");
  optimize->add_option("--name", opt.instance_name, "Instance name for the CSV row");
  add_config_options(optimize, &opt.config, nullptr);

  tdopt::VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "Check two circuits for logical equivalence");
  verify->add_option("original", ver.original, "Original circuit document")->required();
  verify->add_option("optimized", ver.optimized, "Optimized circuit document")->required();
  verify->add_option("--tol", ver.tol, "Max phase-aligned deviation");

  tdopt::CompareArgs cmp;
  auto* compare = app.add_subcommand("compare", "Run the optimizer and the lookahead baseline");
  compare->add_option("input", cmp.input, "Circuit document or suite manifest")->required();
  compare->add_option("--out", cmp.out_csv, "CSV output path");
  compare->add_flag("--ga-only", cmp.ga_only, "Skip the lookahead baseline");
  add_config_options(compare, &cmp.config, &cmp.window);

  tdopt::BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Generate a benchmark suite");
  bench_cmd->add_option("--profile", bench.profile, "small|moderate|large");
  bench_cmd->add_option("--instances", bench.instances, "Instance count override");
  bench_cmd->add_option("--master-seed", bench.master_seed, "Suite master seed")
      ->envname("TDOPT_MASTER_SEED");
  bench_cmd->add_option("--out", bench.out_dir, "Output directory")->required();
  bench_cmd->add_flag("--run", bench.run, "Also optimize every instance and emit results.csv");
  add_config_options(bench_cmd, &bench.config, nullptr);

  tdopt::EstimateArgs est;
  auto* estimate = app.add_subcommand("estimate", "Magic-state factory resource estimate");
  estimate->add_option("--t-count", est.t_count, "T gates consumed")->required();
  estimate->add_option("--t-depth", est.t_depth, "T layers consumed")->required();
  estimate->add_option("--target-error", est.target_error, "Per-T-gate error budget");
  estimate->add_option("--suppression-constant", est.protocol.suppression_constant,
                       "Protocol error constant");
  estimate->add_option("--suppression-exponent", est.protocol.suppression_exponent,
                       "Protocol error exponent");
  estimate->add_option("--tiles", est.protocol.tiles, "Factory tiles");
  estimate->add_option("--distance", est.protocol.code_distance, "Surface code distance");
  estimate->add_option("--out", est.out, "JSON output path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return tdopt::kExitUsage;
  }

  if (*generate) return tdopt::cmd_generate(gen, std::cout);
  if (*optimize) return tdopt::cmd_optimize(opt, std::cout);
  if (*verify) return tdopt::cmd_verify(ver, std::cout);
  if (*compare) return tdopt::cmd_compare(cmp, std::cout);
  if (*bench_cmd) return tdopt::cmd_bench(bench, std::cout);
  if (*estimate) return tdopt::cmd_estimate(est, std::cout);
  return tdopt::kExitUsage;
}
