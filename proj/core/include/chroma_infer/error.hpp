#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace chroma_infer {

/// Machine-readable failure categories shared by the library, CLI and HTTP API.
enum class ErrorCode {
  invalid_input,
  ordering,
  validation,
  incomplete_data,
  empty_cohort,
  lookup,
  shape,
  singular_fit,
  missing_data,
  alignment,
  undefined_correlation,
  split,
  parse,
  io,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string detail = {});

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace chroma_infer
