#pragma once

#include <stdexcept>
#include <string>

namespace fho {

// Error categories map 1:1 onto CLI exit codes.
enum class ErrorKind : int {
  usage = 2,
  type = 3,
  precondition = 4,
  io = 5,
  convergence = 6,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string msg)
      : std::runtime_error(std::move(msg)), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  int exit_code() const noexcept { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

inline Error usage_error(std::string msg) {
  return Error(ErrorKind::usage, std::move(msg));
}
inline Error type_error(std::string msg) {
  return Error(ErrorKind::type, std::move(msg));
}
inline Error precondition_error(std::string msg) {
  return Error(ErrorKind::precondition, std::move(msg));
}
inline Error io_error(std::string msg) {
  return Error(ErrorKind::io, std::move(msg));
}
inline Error convergence_error(std::string msg) {
  return Error(ErrorKind::convergence, std::move(msg));
}

}  // namespace fho
