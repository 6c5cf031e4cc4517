// SPDX-License-Identifier: Apache-2.0
#include "curlspec/error.hpp"

namespace curlspec {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::decomposition_failed: return "DecompositionFailed";
    case ErrorCode::non_finite_source: return "NonFiniteSource";
    case ErrorCode::resonant_kappa: return "ResonantKappa";
    case ErrorCode::index_out_of_range: return "IndexOutOfRange";
    case ErrorCode::length_mismatch: return "LengthMismatch";
    case ErrorCode::cap_exceeded: return "CapExceeded";
    case ErrorCode::singular_matrix: return "SingularMatrix";
    case ErrorCode::not_converged: return "NotConverged";
    case ErrorCode::unknown_preset: return "UnknownPreset";
    case ErrorCode::insufficient_data: return "InsufficientData";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void raise(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace curlspec
