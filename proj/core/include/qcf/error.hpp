#pragma once

#include <stdexcept>
#include <string>

namespace qcf {

enum class ErrorKind {
  InvalidInput,
  UnsupportedDimension,
  InsufficientData,
  NotAvailable,
  IllConditioned,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace qcf
