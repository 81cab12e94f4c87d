#pragma once

#include <stdexcept>
#include <string>

namespace clo {

enum class ErrorKind {
  invalid_argument,  // violated precondition or out-of-range value
  schema,            // malformed input file or JSON
  scale,             // exact enumeration refused; caller should sample instead
  verify,            // separation verification failed
  internal,          // broken internal invariant
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

}  // namespace clo
