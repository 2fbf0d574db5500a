#include "chroma_infer/error.hpp"

#include <utility>

namespace chroma_infer {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_input: return "invalid_input";
    case ErrorCode::ordering: return "ordering";
    case ErrorCode::validation: return "validation";
    case ErrorCode::incomplete_data: return "incomplete_data";
    case ErrorCode::empty_cohort: return "empty_cohort";
    case ErrorCode::lookup: return "lookup";
    case ErrorCode::shape: return "shape";
    case ErrorCode::singular_fit: return "singular_fit";
    case ErrorCode::missing_data: return "missing_data";
    case ErrorCode::alignment: return "alignment";
    case ErrorCode::undefined_correlation: return "undefined_correlation";
    case ErrorCode::split: return "split";
    case ErrorCode::parse: return "parse";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::string detail)
    : std::runtime_error(message), code_(code), detail_(std::move(detail)) {}

}  // namespace chroma_infer
