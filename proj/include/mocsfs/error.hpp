#pragma once

#include <stdexcept>
#include <string>

namespace mocsfs {

enum class ErrorKind {
  InvalidArgument,  // caller violated a precondition
  Io,               // file could not be opened, read or written
  Data,             // input file parsed but failed validation
};

// Single exception type for the core library. The C API maps `kind()` onto
// status codes; the CLI maps it onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_invalid(const std::string& what) {
  throw Error(ErrorKind::InvalidArgument, what);
}

}  // namespace mocsfs
