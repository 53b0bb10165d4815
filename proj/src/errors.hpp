#pragma once
#include <stdexcept>
#include <string>

namespace invconn {

// Error taxonomy mirrored 1:1 by the C API status codes.
enum class ErrorKind {
  Input,         // malformed argument (wrong dims, inconsistent data)
  Parse,         // bad spec file
  Construction,  // data fails a structural law (derivation, homomorphism, ...)
  Hypothesis,    // central circle does not act as a single scalar character
  Unsupported,   // declared feature outside scope (e.g. disconnected K(S))
  Numeric,       // floating-point evaluation failed a sanity bound
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) {
  throw Error(k, msg);
}

}  // namespace invconn
