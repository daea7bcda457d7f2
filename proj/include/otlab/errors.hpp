#pragma once

#include <stdexcept>
#include <string>

namespace otlab {

enum class ErrorKind {
  Input,      // malformed or invalid user input
  Domain,     // precondition violated (wrong dimension, non-unit, ...)
  Precision,  // undecidable at the precision cap
  Internal    // cross-check or invariant failure; indicates a bug
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

  const char* kind_name() const {
    switch (kind_) {
      case ErrorKind::Input: return "input";
      case ErrorKind::Domain: return "domain";
      case ErrorKind::Precision: return "precision";
      case ErrorKind::Internal: return "internal";
    }
    return "unknown";
  }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_input(const std::string& m) { throw Error(ErrorKind::Input, m); }
[[noreturn]] inline void throw_domain(const std::string& m) { throw Error(ErrorKind::Domain, m); }
[[noreturn]] inline void throw_precision(const std::string& m) { throw Error(ErrorKind::Precision, m); }
[[noreturn]] inline void throw_internal(const std::string& m) { throw Error(ErrorKind::Internal, m); }

}  // namespace otlab
