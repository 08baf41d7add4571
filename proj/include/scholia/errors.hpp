#pragma once

#include <stdexcept>
#include <string>

namespace scholia {

// Broad failure classes surfaced by the library. Verification *results*
// (e.g. a broken chain) are reported as values, not exceptions; these are
// for contract violations: bad arguments, unknown ids, malformed inputs.
enum class ErrorKind {
  Argument,    // out-of-range value, unknown id, malformed input
  Identity,    // unknown or unauthorized signer, bad key material
  Validation,  // event rejected by state validation rules
  Encoding,    // value not representable in the canonical encoding
  Config,      // governance config violates its own invariants
  Io,          // filesystem / locking failures
  NotFound,    // query has no answer (no live version, no replications, …)
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_error(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace scholia
