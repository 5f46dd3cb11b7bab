#pragma once

#include <stdexcept>
#include <string>

namespace bsurf {

enum class ErrorKind {
  Parse,
  Invalid,
  Argument,
  Precondition,
  Incomplete,
};

// Every failure in the core is reported through this exception; the C API
// maps the kind onto a status code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace bsurf
