// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace curlspec {

enum class ErrorCode {
  invalid_argument,
  dimension_mismatch,
  decomposition_failed,
  non_finite_source,
  resonant_kappa,
  index_out_of_range,
  length_mismatch,
  cap_exceeded,
  singular_matrix,
  not_converged,
  unknown_preset,
  insufficient_data,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& what);

inline void require(bool ok, ErrorCode code, const char* what) {
  if (!ok) raise(code, what);
}

}  // namespace curlspec
