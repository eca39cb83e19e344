#pragma once

#include <stdexcept>
#include <string>

namespace randcomplex {

// Mirrors rc_status in randcomplex.h; values are part of the C ABI.
enum class ErrorCode : int {
  InvalidArgument = 1,
  OutOfRange = 2,
  NotAFace = 3,
  PreconditionViolated = 4,
  GuardExceeded = 5,
  ZeroProbability = 6,
  ParseError = 7,
  Io = 8,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace randcomplex
