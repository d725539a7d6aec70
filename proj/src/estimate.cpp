#include "tdopt/estimate.hpp"

#include <cmath>
#include <string>

#include "tdopt/errors.hpp"

namespace tdopt {

ResourceEstimate estimate_resources(long long t_count, long long t_depth, double target_error,
                                    const ProtocolParams& protocol) {
  if (t_count < 0 || t_depth < 0) {
    throw StructuralError("estimate: t_count and t_depth must be non-negative");
  }
  if (!(target_error > 0.0)) {
    throw StructuralError("estimate: target error must be positive");
  }
  if (!(protocol.suppression_constant > 0.0) || protocol.suppression_exponent < 1 ||
      protocol.tiles < 1 || protocol.code_distance < 1) {
    throw StructuralError("estimate: malformed protocol parameters");
  }
  ResourceEstimate estimate;
  estimate.protocol = protocol;
  estimate.target_error = target_error;
  estimate.t_count = t_count;
  estimate.t_depth = t_depth;
  estimate.p_max = std::pow(target_error / protocol.suppression_constant,
                            1.0 / static_cast<double>(protocol.suppression_exponent));
  const long long d = protocol.code_distance;
  estimate.factory_qubits = static_cast<long long>(protocol.tiles) * (2 * d * d - 1);
  return estimate;
}

}  // namespace tdopt
