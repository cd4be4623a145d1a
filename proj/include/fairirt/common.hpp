#pragma once

#include <stdexcept>
#include <string>

namespace fairirt {

// Error categories surfaced by the CLI as machine-parsable prefixes.
enum class ErrorCategory {
  input,       // invalid values or records
  parse,       // malformed file contents
  io,          // filesystem failures
  dimension,   // mismatched matrix / parameter shapes
  constraint,  // operation preconditions (e.g. Rasch-only analyses)
  numeric,     // non-finite quantities during computation
  usage,       // bad command-line invocation
};

const char* to_string(ErrorCategory category) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& message)
      : std::runtime_error(message), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

[[noreturn]] inline void raise(ErrorCategory category, const std::string& message) {
  throw Error(category, message);
}

}  // namespace fairirt
