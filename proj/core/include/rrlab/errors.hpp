#pragma once

#include <stdexcept>
#include <string>

namespace rrlab {

enum class ErrorKind {
  PrecisionTooLow,
  CapExceeded,
  MissingAngle,
  Precondition,
  DivisibilityViolation,
  WrongResidueClass,
  ConfigInvalid,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct PrecisionTooLow : Error {
  explicit PrecisionTooLow(const std::string& what) : Error(ErrorKind::PrecisionTooLow, what) {}
};
struct CapExceeded : Error {
  explicit CapExceeded(const std::string& what) : Error(ErrorKind::CapExceeded, what) {}
};
struct MissingAngle : Error {
  explicit MissingAngle(const std::string& what) : Error(ErrorKind::MissingAngle, what) {}
};
struct PreconditionViolation : Error {
  explicit PreconditionViolation(const std::string& what) : Error(ErrorKind::Precondition, what) {}
};
struct DivisibilityViolation : Error {
  explicit DivisibilityViolation(const std::string& what)
      : Error(ErrorKind::DivisibilityViolation, what) {}
};
struct WrongResidueClass : Error {
  explicit WrongResidueClass(const std::string& what)
      : Error(ErrorKind::WrongResidueClass, what) {}
};
struct ConfigInvalid : Error {
  explicit ConfigInvalid(const std::string& what) : Error(ErrorKind::ConfigInvalid, what) {}
};

}  // namespace rrlab
