#include "tdopt/commands.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <ostream>
#include <vector>

#include "tdopt/baselines.hpp"
#include "tdopt/unitary.hpp"

namespace tdopt {

namespace {

namespace fs = std::filesystem;

int guarded(std::ostream& log, const std::function<int()>& body) {
  try {
    return body();
  } catch (const CapacityError& e) {
    log << "error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const ParseError& e) {
    log << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    log << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return 1;
  }
}

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void append_csv_row(const std::string& path, const std::string& row) {
  std::string contents;
  if (fs::exists(path)) contents = read_file(path);
  if (contents.empty()) contents = csv_header() + "\n";
  contents += row + "\n";
  atomic_write_file(path, contents);
}

struct MethodStats {
  double td_reduction_sum = 0.0;
  double tc_reduction_sum = 0.0;
  double seconds_sum = 0.0;
  int count = 0;

  void add(int td_before, int td_after, int tc_before, int tc_after, double seconds) {
    td_reduction_sum += OptimizationReport::reduction_percent(td_before, td_after);
    tc_reduction_sum += OptimizationReport::reduction_percent(tc_before, tc_after);
    seconds_sum += seconds;
    ++count;
  }

  void print(std::ostream& log, const std::string& method) const {
    if (count == 0) return;
    log << method << ": mean t_depth reduction "
        << td_reduction_sum / count << "%, mean t_count reduction " << tc_reduction_sum / count
        << "%, mean seconds " << seconds_sum / count << " over " << count << " instances\n";
  }
};

}  // namespace

OptimizationReport run_optimize(const Circuit& input, const OptimizeConfig& config,
                                Circuit* optimized_out) {
  OptimizationReport report;
  report.config = config;
  report.td_before = t_depth(input);
  report.tc_before = t_count(input);

  const auto start = std::chrono::steady_clock::now();
  OptimizeOutcome outcome =
      optimize(input, config.ga, config.greedy, config.expansion, config.policy);
  report.seconds = elapsed_seconds(start);

  report.td_after = t_depth(outcome.circuit);
  report.tc_after = t_count(outcome.circuit);
  report.rounds = static_cast<int>(outcome.rounds.size());
  report.residues_extracted = static_cast<int>(outcome.circuit.residues.size()) -
                              static_cast<int>(input.residues.size());
  report.expanded_t_depth = outcome.expanded_t_depth;
  report.reverted_to_input = outcome.reverted_to_input;
  report.round_log = std::move(outcome.rounds);
  if (optimized_out) *optimized_out = std::move(outcome.circuit);
  return report;
}

int cmd_generate(const GenerateArgs& args, std::ostream& log) {
  return guarded(log, [&] {
    GenSpec spec;
    spec.n = args.n;
    spec.c = args.c;
    spec.seed = args.seed;
    if (args.t_total >= 0) {
      spec.t_total = args.t_total;
    } else if (args.density >= 0.0) {
      const long long cells = static_cast<long long>(args.n) * args.c;
      spec.t_total = std::llround(args.density * static_cast<double>(cells));
    } else {
      throw StructuralError("generate: provide --t-total or --density");
    }
    const Circuit circuit = generate(spec);
    Json provenance;
    provenance["generator"] = Json{{"n", spec.n},
                                   {"c", spec.c},
                                   {"t_total", spec.t_total},
                                   {"seed", spec.seed}};
    const std::string text = serialize_circuit(circuit, provenance);
    if (args.out.empty()) {
      log << text;
    } else {
      atomic_write_file(args.out, text);
      log << "wrote " << args.out << " (t_depth " << t_depth(circuit) << ", t_count "
          << t_count(circuit) << ")\n";
    }
    return kExitOk;
  });
}

int cmd_optimize(const OptimizeArgs& args, std::ostream& log) {
  return guarded(log, [&] {
    const Circuit input = parse_circuit(read_file(args.input));
    Circuit optimized;
    const OptimizationReport report = run_optimize(input, args.config, &optimized);

    if (!args.out_circuit.empty()) {
      atomic_write_file(args.out_circuit, serialize_circuit(optimized));
    }
    if (!args.out_report.empty()) {
      atomic_write_file(args.out_report, report_to_json(report).dump(2) + "\n");
    }
    if (!args.out_csv.empty()) {
      GenSpec spec{input.n, static_cast<int>(input.columns.size()),
                   static_cast<long long>(t_count(input)), args.config.ga.rng_seed};
      append_csv_row(args.out_csv,
                     csv_row(args.instance_name, spec, "ga", report.td_before, report.td_after,
                             report.tc_before, report.tc_after, report.rounds, report.seconds));
    }
    log << "t_depth " << report.td_before << " -> " << report.td_after << " ("
        << OptimizationReport::reduction_percent(report.td_before, report.td_after)
        << "%), t_count " << report.tc_before << " -> " << report.tc_after << " ("
        << OptimizationReport::reduction_percent(report.tc_before, report.tc_after) << "%) in "
        << report.rounds << " rounds\n";
    return kExitOk;
  });
}

int cmd_verify(const VerifyArgs& args, std::ostream& log) {
  return guarded(log, [&] {
    const Circuit original = parse_circuit(read_file(args.original));
    const Circuit optimized = parse_circuit(read_file(args.optimized));
    const VerifyReport report = verify_optimization(original, optimized, args.tol);
    log << verdict_name(report.verdict);
    if (report.verdict == Verdict::Unverifiable) {
      log << " (" << report.reason << ")\n";
    } else {
      log << " (max deviation " << report.max_deviation << ", tolerance " << args.tol << ")\n";
    }
    return report.verdict == Verdict::Equivalent ? kExitOk : kExitNotEquivalent;
  });
}

namespace {

struct CompareUnit {
  std::string id;
  GenSpec spec;
  Circuit circuit;
};

std::vector<CompareUnit> load_compare_units(const std::string& input) {
  const std::string text = read_file(input);
  const Json probe = Json::parse(text, nullptr, false);
  std::vector<CompareUnit> units;
  if (probe.is_object() && probe.contains("instances")) {
    for (const SuiteInstance& inst : parse_manifest(text)) {
      units.push_back({inst.id, inst.spec, generate(inst.spec)});
    }
  } else {
    Circuit circuit = parse_circuit(text);
    GenSpec spec{circuit.n, static_cast<int>(circuit.columns.size()),
                 static_cast<long long>(t_count(circuit)), 0};
    units.push_back({"instance", spec, std::move(circuit)});
  }
  return units;
}

}  // namespace

int cmd_compare(const CompareArgs& args, std::ostream& log) {
  return guarded(log, [&] {
    std::vector<CompareUnit> units = load_compare_units(args.input);
    struct Row {
      OptimizationReport ga;
      LookaheadReport lookahead;
      double lookahead_seconds = 0.0;
    };
    std::vector<Row> rows(units.size());

#pragma omp parallel for schedule(dynamic, 1)
    for (int k = 0; k < static_cast<int>(units.size()); ++k) {
      Row& row = rows[static_cast<std::size_t>(k)];
      row.ga = run_optimize(units[static_cast<std::size_t>(k)].circuit, args.config);
      if (!args.ga_only) {
        const auto start = std::chrono::steady_clock::now();
        LookaheadParams params{args.window, args.config.policy};
        row.lookahead =
            lookahead_optimize(units[static_cast<std::size_t>(k)].circuit, params).second;
        row.lookahead_seconds = elapsed_seconds(start);
      }
    }

    std::string csv = csv_header() + "\n";
    MethodStats ga_stats, lookahead_stats;
    for (std::size_t k = 0; k < units.size(); ++k) {
      const CompareUnit& unit = units[k];
      const Row& row = rows[k];
      csv += csv_row(unit.id, unit.spec, "ga", row.ga.td_before, row.ga.td_after,
                     row.ga.tc_before, row.ga.tc_after, row.ga.rounds, row.ga.seconds) +
             "\n";
      ga_stats.add(row.ga.td_before, row.ga.td_after, row.ga.tc_before, row.ga.tc_after,
                   row.ga.seconds);
      if (!args.ga_only) {
        const LookaheadReport& la = row.lookahead;
        csv += csv_row(unit.id, unit.spec, "lookahead", la.td_before, la.td_after, la.tc_before,
                       la.tc_after, 1, row.lookahead_seconds) +
               "\n";
        lookahead_stats.add(la.td_before, la.td_after, la.tc_before, la.tc_after,
                            row.lookahead_seconds);
      }
    }
    if (!args.out_csv.empty()) atomic_write_file(args.out_csv, csv);
    ga_stats.print(log, "ga");
    lookahead_stats.print(log, "lookahead(w=" + std::to_string(args.window) + ")");
    return kExitOk;
  });
}

int cmd_bench(const BenchArgs& args, std::ostream& log) {
  return guarded(log, [&] {
    SuiteProfile profile;
    if (args.profile == "small") {
      profile = small_profile();
    } else if (args.profile == "moderate") {
      profile = moderate_profile();
    } else if (args.profile == "large") {
      profile = large_profile();
    } else {
      throw StructuralError("unknown profile \"" + args.profile +
                            "\" (expected small|moderate|large)");
    }
    if (args.instances >= 0) profile.instances = args.instances;
    if (args.out_dir.empty()) throw StructuralError("bench: --out directory is required");
    fs::create_directories(args.out_dir);

    const std::vector<SuiteInstance> plan = plan_suite(profile, args.master_seed);
    std::vector<std::string> paths;
    paths.reserve(plan.size());
    for (const SuiteInstance& inst : plan) paths.push_back(inst.id + ".json");

    std::vector<Circuit> circuits(plan.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (int k = 0; k < static_cast<int>(plan.size()); ++k) {
      circuits[static_cast<std::size_t>(k)] = generate(plan[static_cast<std::size_t>(k)].spec);
    }
    for (std::size_t k = 0; k < plan.size(); ++k) {
      Json provenance;
      provenance["generator"] = Json{{"n", plan[k].spec.n},
                                     {"c", plan[k].spec.c},
                                     {"t_total", plan[k].spec.t_total},
                                     {"seed", plan[k].spec.seed}};
      atomic_write_file(fs::path(args.out_dir) / paths[k],
                        serialize_circuit(circuits[k], provenance));
    }
    atomic_write_file(fs::path(args.out_dir) / "manifest.json",
                      manifest_to_json(profile, args.master_seed, plan, paths).dump(2) + "\n");
    log << "wrote " << plan.size() << " instances to " << args.out_dir << "\n";

    if (args.run) {
      std::vector<OptimizationReport> reports(plan.size());
#pragma omp parallel for schedule(dynamic, 1)
      for (int k = 0; k < static_cast<int>(plan.size()); ++k) {
        reports[static_cast<std::size_t>(k)] =
            run_optimize(circuits[static_cast<std::size_t>(k)], args.config);
      }
      std::string csv = csv_header() + "\n";
      MethodStats stats;
      for (std::size_t k = 0; k < plan.size(); ++k) {
        const OptimizationReport& r = reports[k];
        csv += csv_row(plan[k].id, plan[k].spec, "ga", r.td_before, r.td_after, r.tc_before,
                       r.tc_after, r.rounds, r.seconds) +
               "\n";
        stats.add(r.td_before, r.td_after, r.tc_before, r.tc_after, r.seconds);
      }
      atomic_write_file(fs::path(args.out_dir) / "results.csv", csv);
      stats.print(log, "ga");
    }
    return kExitOk;
  });
}

int cmd_estimate(const EstimateArgs& args, std::ostream& log) {
  return guarded(log, [&] {
    const ResourceEstimate est =
        estimate_resources(args.t_count, args.t_depth, args.target_error, args.protocol);
    Json j;
    j["t_count"] = est.t_count;
    j["t_depth"] = est.t_depth;
    j["target_error"] = est.target_error;
    j["protocol"] = Json{{"suppression_constant", est.protocol.suppression_constant},
                         {"suppression_exponent", est.protocol.suppression_exponent},
                         {"tiles", est.protocol.tiles},
                         {"code_distance", est.protocol.code_distance}};
    j["p_max"] = est.p_max;
    j["p_max_formula"] = "(target_error / suppression_constant)^(1/suppression_exponent)";
    j["factory_qubits"] = est.factory_qubits;
    j["factory_qubits_formula"] = "tiles * (2*d^2 - 1)";
    const std::string text = j.dump(2) + "\n";
    if (args.out.empty()) {
      log << text;
    } else {
      atomic_write_file(args.out, text);
      log << "wrote " << args.out << "\n";
    }
    return kExitOk;
  });
}

}  // namespace tdopt
