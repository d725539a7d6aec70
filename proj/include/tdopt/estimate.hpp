#pragma once

namespace tdopt {

// Distillation protocol model: one round suppresses an injection error p to
// roughly suppression_constant * p^suppression_exponent, and the factory
// occupies tiles * (2*d^2 - 1) physical qubits.
struct ProtocolParams {
  double suppression_constant = 41.25;
  int suppression_exponent = 4;
  int tiles = 11;
  int code_distance = 5;
};

struct ResourceEstimate {
  ProtocolParams protocol;
  double target_error = 0.0;
  double p_max = 0.0;            // (target / constant)^(1/exponent)
  long long factory_qubits = 0;  // tiles * (2d^2 - 1)
  long long t_count = 0;         // magic states consumed
  long long t_depth = 0;         // distillation batches consumed
};

ResourceEstimate estimate_resources(long long t_count, long long t_depth, double target_error,
                                    const ProtocolParams& protocol);

}  // namespace tdopt
