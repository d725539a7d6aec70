#include "tdopt/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace tdopt {

namespace {

std::string phase_string(PhaseSign s) { return s == PhaseSign::Plus ? "+" : "-"; }

PhaseSign parse_phase(const std::string& s, const std::string& where) {
  if (s == "+") return PhaseSign::Plus;
  if (s == "-") return PhaseSign::Minus;
  throw ParseError(where + ": phase must be \"+\" or \"-\", got \"" + s + "\"");
}

std::string axis_string(PauliAxis a) { return std::string(1, axis_char(a)); }

std::string park_string(ResiduePark park) {
  switch (park) {
    case ResiduePark::End: return "end";
    case ResiduePark::Start: return "start";
    default: return "stuck";
  }
}

ResiduePark parse_park(const std::string& s, const std::string& where) {
  if (s == "end") return ResiduePark::End;
  if (s == "start") return ResiduePark::Start;
  if (s == "stuck") return ResiduePark::Stuck;
  throw ParseError(where + ": park must be \"end\", \"start\" or \"stuck\", got \"" + s + "\"");
}

PauliAxis parse_axis(const std::string& s, const std::string& where) {
  if (s == "X") return PauliAxis::X;
  if (s == "Y") return PauliAxis::Y;
  if (s == "Z") return PauliAxis::Z;
  throw ParseError(where + ": axis must be \"X\", \"Y\" or \"Z\", got \"" + s + "\"");
}

int parse_qubit_key(const std::string& key, int n, const std::string& where) {
  int value = -1;
  const auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), value);
  if (ec != std::errc{} || ptr != key.data() + key.size() || value < 0) {
    throw ParseError(where + ": gate key \"" + key + "\" is not a qubit index");
  }
  if (value >= n) {
    throw ParseError(where + ": qubit " + std::to_string(value) + " out of range (n=" +
                     std::to_string(n) + ")");
  }
  return value;
}

// nlohmann's object type silently keeps the last duplicate key, so duplicates
// are caught during the parse callback instead.
Json parse_json_rejecting_duplicates(const std::string& text) {
  std::vector<std::vector<std::string>> key_stack;
  const auto callback = [&](int /*depth*/, Json::parse_event_t event, Json& parsed) {
    switch (event) {
      case Json::parse_event_t::object_start:
        key_stack.emplace_back();
        break;
      case Json::parse_event_t::key: {
        const std::string key = parsed.get<std::string>();
        auto& keys = key_stack.back();
        for (const std::string& seen : keys) {
          if (seen == key) throw ParseError("duplicate key \"" + key + "\" in document");
        }
        keys.push_back(key);
        break;
      }
      case Json::parse_event_t::object_end:
        key_stack.pop_back();
        break;
      default:
        break;
    }
    return true;
  };
  try {
    return Json::parse(text, callback);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("document is not valid JSON: ") + e.what());
  }
}

}  // namespace

std::string serialize_circuit(const Circuit& circuit, const std::optional<Json>& provenance) {
  Json doc;
  doc["version"] = kDocumentVersion;
  doc["n"] = circuit.n;
  doc["columns"] = Json::array();
  for (const Column& col : circuit.columns) {
    Json jcol;
    jcol["phase"] = phase_string(col.phase);
    Json gates = Json::object();
    for (int q = 0; q < col.size(); ++q) {
      const Cell cell = col.cells[static_cast<std::size_t>(q)];
      if (cell.is_rotation()) gates[std::to_string(q)] = axis_string(cell.axis());
    }
    jcol["gates"] = std::move(gates);
    doc["columns"].push_back(std::move(jcol));
  }
  if (!circuit.residues.empty()) {
    doc["residues"] = Json::array();
    for (const CliffordResidue& r : circuit.residues) {
      doc["residues"].push_back(Json{{"qubit", r.qubit},
                                     {"axis", axis_string(r.axis)},
                                     {"phase", phase_string(r.phase)},
                                     {"park", park_string(r.park)}});
    }
  }
  if (provenance) doc["provenance"] = *provenance;
  return doc.dump(2) + "\n";
}

Circuit parse_circuit(const std::string& text) {
  const Json doc = parse_json_rejecting_duplicates(text);
  if (!doc.is_object()) throw ParseError("document root must be an object");
  if (!doc.contains("version") || !doc["version"].is_number_integer()) {
    throw ParseError("document is missing an integer \"version\"");
  }
  if (doc["version"].get<int>() != kDocumentVersion) {
    throw ParseError("unsupported document version " + doc["version"].dump() + ", expected " +
                     std::to_string(kDocumentVersion));
  }
  if (!doc.contains("n") || !doc["n"].is_number_integer() || doc["n"].get<int>() < 1) {
    throw ParseError("\"n\" must be a positive integer");
  }

  Circuit circuit;
  circuit.n = doc["n"].get<int>();
  if (!doc.contains("columns") || !doc["columns"].is_array()) {
    throw ParseError("\"columns\" must be an array");
  }
  int index = 0;
  for (const Json& jcol : doc["columns"]) {
    const std::string where = "columns[" + std::to_string(index) + "]";
    if (!jcol.is_object() || !jcol.contains("phase") || !jcol.contains("gates") ||
        !jcol["gates"].is_object()) {
      throw ParseError(where + ": column must be {phase, gates}");
    }
    Column col = Column::identity(circuit.n);
    col.phase = parse_phase(jcol["phase"].get<std::string>(), where);
    for (const auto& [key, value] : jcol["gates"].items()) {
      const int q = parse_qubit_key(key, circuit.n, where);
      if (!value.is_string()) throw ParseError(where + ": gate value must be an axis string");
      col.cells[static_cast<std::size_t>(q)] =
          Cell{parse_axis(value.get<std::string>(), where + ".gates[\"" + key + "\"]")};
    }
    circuit.columns.push_back(std::move(col));
    ++index;
  }

  if (doc.contains("residues")) {
    if (!doc["residues"].is_array()) throw ParseError("\"residues\" must be an array");
    int rindex = 0;
    for (const Json& jr : doc["residues"]) {
      const std::string where = "residues[" + std::to_string(rindex) + "]";
      if (!jr.is_object() || !jr.contains("qubit") || !jr.contains("axis") ||
          !jr.contains("phase")) {
        throw ParseError(where + ": residue must carry qubit, axis and phase");
      }
      CliffordResidue r;
      if (!jr["qubit"].is_number_integer()) throw ParseError(where + ": qubit must be an integer");
      r.qubit = jr["qubit"].get<int>();
      if (r.qubit < 0 || r.qubit >= circuit.n) {
        throw ParseError(where + ": qubit " + std::to_string(r.qubit) + " out of range (n=" +
                         std::to_string(circuit.n) + ")");
      }
      r.axis = parse_axis(jr["axis"].get<std::string>(), where);
      r.phase = parse_phase(jr["phase"].get<std::string>(), where);
      r.park = parse_park(jr.value("park", std::string("end")), where);
      circuit.residues.push_back(r);
      ++rindex;
    }
  }
  return circuit;
}

Json config_to_json(const OptimizeConfig& config) {
  Json j;
  j["policy"] = Json{{"overlap", config.policy.overlap == OverlapRule::DisjointOnly
                                     ? "disjoint"
                                     : "overlap"},
                     {"order", config.policy.order == OrderRule::PaperOrder ? "paper" : "strict"}};
  j["expansion"] = Json{{"enabled", config.expansion.enabled},
                        {"alpha", config.expansion.alpha},
                        {"locality_k", config.expansion.locality_k},
                        {"each_round", config.expansion.each_round}};
  j["greedy"] = Json{{"t_max", config.greedy.t_max},
                     {"delta_max", config.greedy.delta_max},
                     {"k_min", config.greedy.k_min},
                     {"beta", config.greedy.beta}};
  j["ga"] = Json{{"population", config.ga.population},
                 {"generations", config.ga.generations},
                 {"elite", config.ga.elite},
                 {"mutation_rate", config.ga.mutation_rate},
                 {"max_rounds", config.ga.max_rounds},
                 {"seed", config.ga.rng_seed}};
  return j;
}

double OptimizationReport::reduction_percent(int before, int after) {
  if (before == 0) return 0.0;
  return 100.0 * static_cast<double>(before - after) / static_cast<double>(before);
}

Json report_to_json(const OptimizationReport& report) {
  Json j;
  j["input"] = Json{{"t_depth", report.td_before}, {"t_count", report.tc_before}};
  j["output"] = Json{{"t_depth", report.td_after}, {"t_count", report.tc_after}};
  j["reduction_percent"] =
      Json{{"t_depth", OptimizationReport::reduction_percent(report.td_before, report.td_after)},
           {"t_count", OptimizationReport::reduction_percent(report.tc_before, report.tc_after)}};
  j["rounds"] = report.rounds;
  j["residues_extracted"] = report.residues_extracted;
  j["expanded_t_depth"] = report.expanded_t_depth;
  j["reverted_to_input"] = report.reverted_to_input;
  j["seconds"] = report.seconds;
  j["config"] = config_to_json(report.config);
  j["round_log"] = Json::array();
  for (const RoundLog& log : report.round_log) {
    Json pairs = Json::array();
    for (const auto& [a, b] : log.applied) pairs.push_back(Json::array({a, b}));
    j["round_log"].push_back(Json{{"round", log.round},
                                  {"pool_size", log.pool_size},
                                  {"best_fitness", log.best_fitness},
                                  {"applied", std::move(pairs)},
                                  {"t_depth_after", log.t_depth_after},
                                  {"t_count_after", log.t_count_after},
                                  {"residues_extracted", log.residues_extracted}});
  }
  return j;
}

std::string csv_header() {
  return "instance,n,c,t_total,method,td_before,td_after,tc_before,tc_after,rounds,seconds,seed";
}

std::string csv_row(const std::string& instance, const GenSpec& spec, const std::string& method,
                    int td_before, int td_after, int tc_before, int tc_after, int rounds,
                    double seconds) {
  char buffer[256];
  std::snprintf(buffer, sizeof buffer, "%s,%d,%d,%lld,%s,%d,%d,%d,%d,%d,%.6f,%llu",
                instance.c_str(), spec.n, spec.c, spec.t_total, method.c_str(), td_before,
                td_after, tc_before, tc_after, rounds, seconds,
                static_cast<unsigned long long>(spec.seed));
  return buffer;
}

Json manifest_to_json(const SuiteProfile& profile, std::uint64_t master_seed,
                      const std::vector<SuiteInstance>& plan,
                      const std::vector<std::string>& paths) {
  Json j;
  j["version"] = kDocumentVersion;
  j["master_seed"] = master_seed;
  j["profile"] = Json{{"name", profile.name},
                      {"n_min", profile.n_min},
                      {"n_max", profile.n_max},
                      {"c_min", profile.c_min},
                      {"c_max", profile.c_max},
                      {"density_grades", profile.density_grades},
                      {"instances", profile.instances}};
  j["instances"] = Json::array();
  for (std::size_t k = 0; k < plan.size(); ++k) {
    const SuiteInstance& inst = plan[k];
    Json ji{{"id", inst.id},
            {"n", inst.spec.n},
            {"c", inst.spec.c},
            {"t_total", inst.spec.t_total},
            {"seed", inst.spec.seed},
            {"density_grade", inst.density_grade}};
    if (k < paths.size()) ji["path"] = paths[k];
    j["instances"].push_back(std::move(ji));
  }
  return j;
}

std::vector<SuiteInstance> parse_manifest(const std::string& text,
                                          std::vector<std::string>* paths) {
  const Json doc = parse_json_rejecting_duplicates(text);
  if (!doc.is_object() || !doc.contains("instances") || !doc["instances"].is_array()) {
    throw ParseError("manifest must be an object with an \"instances\" array");
  }
  std::vector<SuiteInstance> plan;
  int index = 0;
  for (const Json& ji : doc["instances"]) {
    const std::string where = "instances[" + std::to_string(index) + "]";
    SuiteInstance inst;
    try {
      inst.id = ji.at("id").get<std::string>();
      inst.spec.n = ji.at("n").get<int>();
      inst.spec.c = ji.at("c").get<int>();
      inst.spec.t_total = ji.at("t_total").get<long long>();
      inst.spec.seed = ji.at("seed").get<std::uint64_t>();
      inst.density_grade = ji.value("density_grade", 0.0);
    } catch (const Json::exception& e) {
      throw ParseError(where + ": " + e.what());
    }
    if (paths) paths->push_back(ji.value("path", std::string{}));
    plan.push_back(std::move(inst));
    ++index;
  }
  return plan;
}

void atomic_write_file(const std::filesystem::path& path, const std::string& contents) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace tdopt
