#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "tdopt/circuit.hpp"

namespace tdopt {

inline constexpr int kMaxOracleQubits = 12;

// Row-major dense matrix over 2^n basis states; qubit 0 is the least
// significant index bit.
struct DenseUnitary {
  int n_qubits = 0;
  std::size_t dim = 1;
  std::vector<std::complex<double>> a;

  std::complex<double>& at(std::size_t r, std::size_t c) { return a[r * dim + c]; }
  const std::complex<double>& at(std::size_t r, std::size_t c) const { return a[r * dim + c]; }
};

DenseUnitary identity_unitary(int n_qubits);

// exp(i * s * pi/8 * P) per qubit, Kronecker-assembled. Identity cells
// contribute I.
DenseUnitary column_unitary(const Column& column, int n_qubits);

// Ordered product of the column unitaries, column 0 applied first. When
// include_residues, each pi/4 residue is applied after all columns, later
// list entries first (the order they were parked in).
DenseUnitary circuit_unitary(const Circuit& circuit, bool include_residues);

// Same contract built the slow way (explicit column matrices and naive
// matrix products); the independent route the fast path is checked against.
DenseUnitary circuit_unitary_reference(const Circuit& circuit, bool include_residues);

// Naive O(dim^3) product, b applied first.
DenseUnitary matmul(const DenseUnitary& a, const DenseUnitary& b);

struct EquivalenceReport {
  bool equivalent = false;
  double max_deviation = 0.0;
};

// Phase-aligned comparison: the global phase is fixed from the
// largest-magnitude entry of b, then the max entry-wise deviation is compared
// against tol.
EquivalenceReport equivalent(const DenseUnitary& a, const DenseUnitary& b, double tol);

enum class Verdict { Equivalent, NotEquivalent, Unverifiable };

const char* verdict_name(Verdict v);

struct VerifyReport {
  Verdict verdict = Verdict::Unverifiable;
  double max_deviation = 0.0;
  std::string reason;
};

// Compares the original circuit against the optimized one with its residues
// accounted at the end. Returns Unverifiable when some residue could not be
// floated past the columns after its extraction point, since the end-of-
// circuit accounting would then be wrong rather than the optimization.
VerifyReport verify_optimization(const Circuit& original, const Circuit& optimized, double tol);

}  // namespace tdopt
