#include "rrlab/errors.hpp"

namespace rrlab {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::PrecisionTooLow: return "precision-too-low";
    case ErrorKind::CapExceeded: return "cap-exceeded";
    case ErrorKind::MissingAngle: return "missing-angle";
    case ErrorKind::Precondition: return "precondition-violation";
    case ErrorKind::DivisibilityViolation: return "divisibility-violation";
    case ErrorKind::WrongResidueClass: return "wrong-residue-class";
    case ErrorKind::ConfigInvalid: return "config-invalid";
  }
  return "error";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

}  // namespace rrlab
