#pragma once

#include <stdexcept>
#include <string>

namespace sfista {

enum class ErrorKind {
  invalid_argument,
  invalid_config,
  invalid_start,
  numeric_failure,
  undefined_certificate,
  unsupported,
  growth_overflow,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::invalid_config: return "invalid-config";
    case ErrorKind::invalid_start: return "invalid-start";
    case ErrorKind::numeric_failure: return "numeric-failure";
    case ErrorKind::undefined_certificate: return "undefined-certificate";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::growth_overflow: return "growth-overflow";
  }
  return "unknown";
}

// Single exception type for the library; callers branch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace sfista
