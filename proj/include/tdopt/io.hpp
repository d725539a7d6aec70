#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tdopt/benchgen.hpp"
#include "tdopt/circuit.hpp"
#include "tdopt/ga.hpp"

namespace tdopt {

inline constexpr int kDocumentVersion = 1;

using Json = nlohmann::ordered_json;

// Circuit document schema:
//   {version, n, columns: [{phase: "+"|"-", gates: {"<q>": "X"|"Y"|"Z"}}],
//    residues?, provenance?}
// Serialization is canonical: gates keyed by ascending qubit index, residues
// only present when non-empty.
std::string serialize_circuit(const Circuit& circuit,
                              const std::optional<Json>& provenance = std::nullopt);

// Rejects duplicate gate keys, out-of-range indices, unknown axes and version
// mismatches; messages name the offending column/qubit.
Circuit parse_circuit(const std::string& text);

struct OptimizeConfig {
  ExpansionParams expansion;
  GreedyParams greedy;
  GaParams ga;
  MergePolicy policy;
};

Json config_to_json(const OptimizeConfig& config);

struct OptimizationReport {
  int td_before = 0, td_after = 0;
  int tc_before = 0, tc_after = 0;
  int rounds = 0;
  int residues_extracted = 0;
  int expanded_t_depth = 0;
  bool reverted_to_input = false;
  double seconds = 0.0;
  OptimizeConfig config;
  std::vector<RoundLog> round_log;

  // 100*(before-after)/before; 0 when before is 0.
  static double reduction_percent(int before, int after);
};

Json report_to_json(const OptimizationReport& report);

// Aggregate CSV row contract shared by optimize/compare/bench outputs.
std::string csv_header();
std::string csv_row(const std::string& instance, const GenSpec& spec, const std::string& method,
                    int td_before, int td_after, int tc_before, int tc_after, int rounds,
                    double seconds);

// Suite manifest: {version, master_seed, profile, instances:[{id, n, c,
// t_total, seed, density_grade, path}]}.
Json manifest_to_json(const SuiteProfile& profile, std::uint64_t master_seed,
                      const std::vector<SuiteInstance>& plan,
                      const std::vector<std::string>& paths);
std::vector<SuiteInstance> parse_manifest(const std::string& text,
                                          std::vector<std::string>* paths = nullptr);

// Temp-file-then-rename so readers never observe a partial file.
void atomic_write_file(const std::filesystem::path& path, const std::string& contents);

std::string read_file(const std::filesystem::path& path);

}  // namespace tdopt
