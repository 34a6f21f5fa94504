#pragma once

#include <stdexcept>
#include <string>

namespace linml {

enum class ErrorKind {
  MalformedLine,
  NonAscendingIndex,
  NonFiniteValue,
  LabelArityMismatch,
  InvalidRange,
  IndexOutOfRange,
  LengthMismatch,
  Empty,
  KTooLarge,
  EmptyNeighbors,
  SingularSystem,
  NonFiniteLoss,
  EmptyGrid,
  DatasetNotFound,
  ConfigInvalid,
};

// Exit-code buckets used by the CLI: usage/config -> 1, data -> 2, numeric -> 3.
enum class ErrorCategory { Config = 1, Data = 2, Numeric = 3 };

const char* kind_name(ErrorKind kind);
ErrorCategory category(ErrorKind kind);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace linml
