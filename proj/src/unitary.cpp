#include "tdopt/unitary.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace tdopt {

namespace {

using Complex = std::complex<double>;
using Mat2 = std::array<Complex, 4>;  // row-major 2x2

constexpr Complex kI{0.0, 1.0};

Mat2 pauli_matrix(PauliAxis axis) {
  switch (axis) {
    case PauliAxis::X: return {Complex{0, 0}, Complex{1, 0}, Complex{1, 0}, Complex{0, 0}};
    case PauliAxis::Y: return {Complex{0, 0}, Complex{0, -1}, Complex{0, 1}, Complex{0, 0}};
    default: return {Complex{1, 0}, Complex{0, 0}, Complex{0, 0}, Complex{-1, 0}};
  }
}

// exp(i * s * theta * P) = cos(theta) I + i * s * sin(theta) P
Mat2 rotation_factor(PauliAxis axis, PhaseSign phase, double theta) {
  const double s = static_cast<double>(phase_value(phase));
  const Mat2 p = pauli_matrix(axis);
  Mat2 out;
  const Complex scale = kI * s * std::sin(theta);
  for (int k = 0; k < 4; ++k) out[static_cast<std::size_t>(k)] = scale * p[static_cast<std::size_t>(k)];
  out[0] += std::cos(theta);
  out[3] += std::cos(theta);
  return out;
}

void require_capacity(int n_qubits) {
  if (n_qubits < 0 || n_qubits > kMaxOracleQubits) {
    throw CapacityError("dense unitaries support at most " +
                        std::to_string(kMaxOracleQubits) + " qubits, got " +
                        std::to_string(n_qubits));
  }
}

// u <- G u where G applies m2 on qubit q. Pairs of rows that differ in bit q
// are mixed; each pair is touched by exactly one iteration, so the parallel
// loop is race-free and the result does not depend on scheduling.
void apply_factor_left(DenseUnitary& u, int q, const Mat2& m2) {
  const std::size_t dim = u.dim;
  const std::size_t step = std::size_t{1} << q;
  const std::int64_t half = static_cast<std::int64_t>(dim / 2);
#pragma omp parallel for schedule(static)
  for (std::int64_t idx = 0; idx < half; ++idx) {
    const std::size_t u_idx = static_cast<std::size_t>(idx);
    const std::size_t r0 = ((u_idx & ~(step - 1)) << 1) | (u_idx & (step - 1));
    const std::size_t r1 = r0 | step;
    Complex* row0 = u.a.data() + r0 * dim;
    Complex* row1 = u.a.data() + r1 * dim;
    for (std::size_t c = 0; c < dim; ++c) {
      const Complex v0 = row0[c];
      const Complex v1 = row1[c];
      row0[c] = m2[0] * v0 + m2[1] * v1;
      row1[c] = m2[2] * v0 + m2[3] * v1;
    }
  }
}

void apply_column_left(DenseUnitary& u, const Column& column, double theta) {
  for (int q = 0; q < column.size(); ++q) {
    const Cell cell = column.cells[static_cast<std::size_t>(q)];
    if (!cell.is_rotation()) continue;
    apply_factor_left(u, q, rotation_factor(cell.axis(), column.phase, theta));
  }
}

DenseUnitary kron(const DenseUnitary& a, const Mat2& b) {
  DenseUnitary out;
  out.n_qubits = a.n_qubits + 1;
  out.dim = a.dim * 2;
  out.a.resize(out.dim * out.dim);
  for (std::size_t ra = 0; ra < a.dim; ++ra) {
    for (std::size_t ca = 0; ca < a.dim; ++ca) {
      const Complex v = a.at(ra, ca);
      for (std::size_t rb = 0; rb < 2; ++rb) {
        for (std::size_t cb = 0; cb < 2; ++cb) {
          out.at(ra * 2 + rb, ca * 2 + cb) = v * b[rb * 2 + cb];
        }
      }
    }
  }
  return out;
}

// Kronecker-assembled so the reference route shares nothing with
// apply_factor_left.
DenseUnitary single_qubit_matrix(int n_qubits, int qubit, const Mat2& m2) {
  const Mat2 eye{Complex{1, 0}, Complex{0, 0}, Complex{0, 0}, Complex{1, 0}};
  DenseUnitary u;
  u.n_qubits = 0;
  u.dim = 1;
  u.a = {Complex{1, 0}};
  for (int q = n_qubits - 1; q >= 0; --q) {
    u = kron(u, q == qubit ? m2 : eye);
  }
  return u;
}

}  // namespace

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Equivalent: return "Equivalent";
    case Verdict::NotEquivalent: return "NotEquivalent";
    default: return "Unverifiable";
  }
}

DenseUnitary identity_unitary(int n_qubits) {
  require_capacity(n_qubits);
  DenseUnitary u;
  u.n_qubits = n_qubits;
  u.dim = std::size_t{1} << n_qubits;
  u.a.assign(u.dim * u.dim, Complex{0, 0});
  for (std::size_t k = 0; k < u.dim; ++k) u.at(k, k) = Complex{1, 0};
  return u;
}

DenseUnitary column_unitary(const Column& column, int n_qubits) {
  require_capacity(n_qubits);
  if (column.size() != n_qubits) {
    throw StructuralError("column_unitary: column length does not match qubit count");
  }
  const double theta = std::numbers::pi / 8.0;
  const Mat2 eye{Complex{1, 0}, Complex{0, 0}, Complex{0, 0}, Complex{1, 0}};
  DenseUnitary u;
  u.n_qubits = 0;
  u.dim = 1;
  u.a = {Complex{1, 0}};
  for (int q = n_qubits - 1; q >= 0; --q) {
    const Cell cell = column.cells[static_cast<std::size_t>(q)];
    u = kron(u, cell.is_rotation() ? rotation_factor(cell.axis(), column.phase, theta) : eye);
  }
  return u;
}

// Start-parked residues act before all columns in park order; end-parked (and
// stuck, best effort) act after all columns, later-parked innermost.
DenseUnitary circuit_unitary(const Circuit& circuit, bool include_residues) {
  require_capacity(circuit.n);
  DenseUnitary u = identity_unitary(circuit.n);
  const double quarter = std::numbers::pi / 4.0;
  if (include_residues) {
    for (const CliffordResidue& r : circuit.residues) {
      if (r.park != ResiduePark::Start) continue;
      apply_factor_left(u, r.qubit, rotation_factor(r.axis, r.phase, quarter));
    }
  }
  const double theta = std::numbers::pi / 8.0;
  for (const Column& col : circuit.columns) {
    if (col.size() != circuit.n) {
      throw StructuralError("circuit_unitary: column length does not match qubit count");
    }
    apply_column_left(u, col, theta);
  }
  if (include_residues) {
    for (auto it = circuit.residues.rbegin(); it != circuit.residues.rend(); ++it) {
      if (it->park == ResiduePark::Start) continue;
      apply_factor_left(u, it->qubit, rotation_factor(it->axis, it->phase, quarter));
    }
  }
  return u;
}

DenseUnitary circuit_unitary_reference(const Circuit& circuit, bool include_residues) {
  require_capacity(circuit.n);
  const double quarter = std::numbers::pi / 4.0;
  DenseUnitary u = identity_unitary(circuit.n);
  if (include_residues) {
    for (const CliffordResidue& r : circuit.residues) {
      if (r.park != ResiduePark::Start) continue;
      u = matmul(single_qubit_matrix(circuit.n, r.qubit,
                                     rotation_factor(r.axis, r.phase, quarter)),
                 u);
    }
  }
  for (const Column& col : circuit.columns) {
    u = matmul(column_unitary(col, circuit.n), u);
  }
  if (include_residues) {
    for (auto it = circuit.residues.rbegin(); it != circuit.residues.rend(); ++it) {
      if (it->park == ResiduePark::Start) continue;
      u = matmul(single_qubit_matrix(circuit.n, it->qubit,
                                     rotation_factor(it->axis, it->phase, quarter)),
                 u);
    }
  }
  return u;
}

DenseUnitary matmul(const DenseUnitary& a, const DenseUnitary& b) {
  if (a.dim != b.dim) throw StructuralError("matmul: dimension mismatch");
  DenseUnitary out;
  out.n_qubits = a.n_qubits;
  out.dim = a.dim;
  out.a.assign(out.dim * out.dim, Complex{0, 0});
  for (std::size_t r = 0; r < a.dim; ++r) {
    for (std::size_t k = 0; k < a.dim; ++k) {
      const Complex v = a.at(r, k);
      if (v == Complex{0, 0}) continue;
      const Complex* brow = b.a.data() + k * b.dim;
      Complex* orow = out.a.data() + r * out.dim;
      for (std::size_t c = 0; c < a.dim; ++c) orow[c] += v * brow[c];
    }
  }
  return out;
}

EquivalenceReport equivalent(const DenseUnitary& a, const DenseUnitary& b, double tol) {
  if (a.dim != b.dim) throw StructuralError("equivalent: dimension mismatch");
  std::size_t pivot = 0;
  double best = 0.0;
  for (std::size_t k = 0; k < b.a.size(); ++k) {
    const double mag = std::abs(b.a[k]);
    if (mag > best) {
      best = mag;
      pivot = k;
    }
  }
  if (best < 1e-12) throw StructuralError("equivalent: reference matrix is numerically zero");

  Complex lambda = a.a[pivot] / b.a[pivot];
  const double lambda_mag = std::abs(lambda);
  lambda = lambda_mag < 1e-12 ? Complex{1, 0} : lambda / lambda_mag;

  EquivalenceReport report;
  for (std::size_t k = 0; k < a.a.size(); ++k) {
    report.max_deviation = std::max(report.max_deviation, std::abs(a.a[k] - lambda * b.a[k]));
  }
  report.equivalent = report.max_deviation <= tol;
  return report;
}

VerifyReport verify_optimization(const Circuit& original, const Circuit& optimized, double tol) {
  if (original.n != optimized.n) {
    throw StructuralError("verify_optimization: qubit counts differ");
  }
  require_capacity(original.n);

  // Stuck residues could not float past the columns on either side when they
  // were extracted. Later merges may have dissolved the blockers, so retry
  // against the final circuit: a residue that commutes with every remaining
  // column and every other residue can be accounted anywhere.
  Circuit accounted = optimized;
  for (std::size_t k = 0; k < accounted.residues.size(); ++k) {
    CliffordResidue& r = accounted.residues[k];
    if (r.park != ResiduePark::Stuck) continue;
    bool commutes_everywhere = true;
    for (const Column& col : accounted.columns) {
      const Cell cell = col.cells[static_cast<std::size_t>(r.qubit)];
      if (cell.is_rotation() && cell.axis() != r.axis) {
        commutes_everywhere = false;
        break;
      }
    }
    for (std::size_t other = 0; commutes_everywhere && other < accounted.residues.size();
         ++other) {
      if (other == k) continue;
      const CliffordResidue& s = accounted.residues[other];
      if (s.qubit == r.qubit && s.axis != r.axis) commutes_everywhere = false;
    }
    if (!commutes_everywhere) {
      VerifyReport report;
      report.verdict = Verdict::Unverifiable;
      report.reason = "residue " + std::to_string(k) +
                      " does not commute past the columns around its extraction point";
      return report;
    }
    r.park = ResiduePark::End;
  }

  const DenseUnitary u_in = circuit_unitary(original, false);
  const DenseUnitary u_out = circuit_unitary(accounted, true);
  const EquivalenceReport eq = equivalent(u_out, u_in, tol);
  VerifyReport report;
  report.max_deviation = eq.max_deviation;
  report.verdict = eq.equivalent ? Verdict::Equivalent : Verdict::NotEquivalent;
  if (!eq.equivalent) report.reason = "max deviation exceeds tolerance";
  return report;
}

}  // namespace tdopt
