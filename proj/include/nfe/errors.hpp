#pragma once

#include <stdexcept>
#include <string>

namespace nfe {

/// Error categories; the CLI maps each one onto a process exit code.
enum class ErrorKind {
  Input,         // malformed or inconsistent user data
  NotASolution,  // candidate fails the norm equation
  Precision,     // numerical certification failed; retry with more bits
  Verification,  // an invariant check failed
  Internal,      // a guaranteed property was violated (a bug)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace nfe
