#include "fairirt/common.hpp"

namespace fairirt {

const char* to_string(ErrorCategory category) noexcept {
  switch (category) {
    case ErrorCategory::input: return "input";
    case ErrorCategory::parse: return "parse";
    case ErrorCategory::io: return "io";
    case ErrorCategory::dimension: return "dimension";
    case ErrorCategory::constraint: return "constraint";
    case ErrorCategory::numeric: return "numeric";
    case ErrorCategory::usage: return "usage";
  }
  return "unknown";
}

}  // namespace fairirt
