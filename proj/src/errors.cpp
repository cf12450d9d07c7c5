#include "pdmorse/errors.hpp"

namespace pdm {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Validation: return "validation";
    case ErrorKind::RealityViolation: return "reality_violation";
    case ErrorKind::DegenerateDenominator: return "degenerate_denominator";
    case ErrorKind::ComplexBranch: return "complex_branch";
    case ErrorKind::DomainUnsupported: return "domain_unsupported";
    case ErrorKind::SingularMass: return "singular_mass";
    case ErrorKind::NoBracket: return "no_bracket";
    case ErrorKind::NonConvergence: return "non_convergence";
    case ErrorKind::ContractViolation: return "contract_violation";
    case ErrorKind::Unbound: return "unbound";
  }
  return "unknown";
}

}  // namespace pdm
