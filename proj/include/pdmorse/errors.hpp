#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pdm {

enum class ErrorKind {
  Validation,
  RealityViolation,
  DegenerateDenominator,
  ComplexBranch,
  DomainUnsupported,
  SingularMass,
  NoBracket,
  NonConvergence,
  ContractViolation,
  Unbound,
};

std::string_view to_string(ErrorKind kind);

/// Base of every error raised by the library. The kind is what the CLI
/// reports on its machine-readable error line.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace pdm
