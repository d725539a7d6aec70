#pragma once

#include <string>
#include <vector>

#include "tdopt/benchgen.hpp"
#include "tdopt/circuit.hpp"

namespace tdopt::testing {

// "+Z..X": leading sign is the column phase, then one character per qubit
// ('.' identity, 'X'/'Y'/'Z' a rotation).
inline Column make_column(const std::string& spec) {
  Column col;
  col.phase = spec.at(0) == '+' ? PhaseSign::Plus : PhaseSign::Minus;
  for (std::size_t k = 1; k < spec.size(); ++k) {
    switch (spec[k]) {
      case '.': col.cells.emplace_back(); break;
      case 'X': col.cells.emplace_back(PauliAxis::X); break;
      case 'Y': col.cells.emplace_back(PauliAxis::Y); break;
      case 'Z': col.cells.emplace_back(PauliAxis::Z); break;
      default: throw std::invalid_argument("bad cell char in test column spec");
    }
  }
  return col;
}

inline Circuit make_circuit(const std::vector<std::string>& columns) {
  Circuit circuit;
  for (const std::string& spec : columns) circuit.columns.push_back(make_column(spec));
  circuit.n = circuit.columns.empty() ? 0 : circuit.columns.front().size();
  return circuit;
}

inline Circuit random_circuit(int n, int c, double density, std::uint64_t seed) {
  GenSpec spec;
  spec.n = n;
  spec.c = c;
  const long long cells = static_cast<long long>(n) * c;
  spec.t_total = std::min<long long>(cells, static_cast<long long>(density * cells + 0.5));
  spec.seed = seed;
  return generate(spec);
}

// Four layers with exactly one valid merge, (0, 1), under either overlap
// rule, and an axis-conflicting pair (0, 3).
inline Circuit four_layer_single_merge() {
  return make_circuit({"+Z.", "+.Z", "-XX", "+YY"});
}

}  // namespace tdopt::testing
