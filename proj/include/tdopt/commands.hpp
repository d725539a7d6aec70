#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "tdopt/estimate.hpp"
#include "tdopt/io.hpp"

namespace tdopt {

// Stable exit-code contract.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCapacity = 3;
inline constexpr int kExitNotEquivalent = 4;

struct GenerateArgs {
  int n = 0;
  int c = 0;
  long long t_total = -1;   // takes precedence when >= 0
  double density = -1.0;    // fraction of the n*c grid, used when t_total < 0
  std::uint64_t seed = 1;
  std::string out;
};

struct OptimizeArgs {
  std::string input;
  std::string out_circuit;       // optional
  std::string out_report;        // optional
  std::string out_csv;           // optional, appends one row (plus header if new)
  std::string instance_name = "instance";
  OptimizeConfig config;
};

struct VerifyArgs {
  std::string original;
  std::string optimized;
  double tol = 1e-9;
};

struct CompareArgs {
  std::string input;  // circuit document or suite manifest
  OptimizeConfig config;
  int window = 6;
  bool ga_only = false;
  std::string out_csv;
};

struct BenchArgs {
  std::string profile = "small";  // small | moderate | large
  int instances = -1;             // -1 keeps the profile default
  std::uint64_t master_seed = 1;
  std::string out_dir;
  bool run = false;  // also optimize every instance and emit CSV
  OptimizeConfig config;
};

struct EstimateArgs {
  long long t_count = 0;
  long long t_depth = 0;
  double target_error = 1e-2;
  ProtocolParams protocol;
  std::string out;  // optional JSON path
};

int cmd_generate(const GenerateArgs& args, std::ostream& log);
int cmd_optimize(const OptimizeArgs& args, std::ostream& log);
int cmd_verify(const VerifyArgs& args, std::ostream& log);
int cmd_compare(const CompareArgs& args, std::ostream& log);
int cmd_bench(const BenchArgs& args, std::ostream& log);
int cmd_estimate(const EstimateArgs& args, std::ostream& log);

// optimize() plus wall-clock timing and report assembly; the core of
// cmd_optimize, reused by compare/bench.
OptimizationReport run_optimize(const Circuit& input, const OptimizeConfig& config,
                                Circuit* optimized_out = nullptr);

}  // namespace tdopt
