#pragma once

#include <stdexcept>
#include <string>

namespace ffcount {

enum class ErrorCode {
  NotAUnit,
  ArityMismatch,
  InversionPresent,
  Singular,
  NotOnFiber,
  EmptyInput,
  ShapeMismatch,
  NoKernel,
  NotFinite,
  Unsupported,
  TruncationTooLow,
  UnsupportedArity,
  DominanceNotCertified,
  InvalidArgument,
  InputError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Problem-file errors carry a JSON pointer to the offending node.
class InputError : public Error {
 public:
  InputError(std::string pointer, const std::string& what)
      : Error(ErrorCode::InputError, (pointer.empty() ? std::string("/") : pointer) + ": " + what),
        pointer_(std::move(pointer)) {}

  const std::string& pointer() const noexcept { return pointer_; }

 private:
  std::string pointer_;
};

}  // namespace ffcount
