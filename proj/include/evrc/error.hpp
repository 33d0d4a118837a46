#pragma once

#include <stdexcept>
#include <string>

namespace evrc {

// All library failures carry a kind so the CLI can map them to exit codes:
// 0 ok, 1 usage/format/validation, 2 infeasible or search budget, 3 broken
// internal invariant.
enum class ErrorKind {
  Usage,
  Format,
  Validation,
  Infeasible,
  Budget,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

  int exit_code() const {
    switch (kind_) {
      case ErrorKind::Usage:
      case ErrorKind::Format:
      case ErrorKind::Validation:
        return 1;
      case ErrorKind::Infeasible:
      case ErrorKind::Budget:
        return 2;
      case ErrorKind::Internal:
        return 3;
    }
    return 3;
  }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) fail(kind, message);
}

}  // namespace evrc
