#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fkin {

enum class ErrorKind {
  domain,     // argument outside the function's domain
  pole,       // gamma pole hit
  overflow,   // result not representable
  range,      // argument beyond the validated series regime
  invariant,  // malformed parameter object
  singular,   // singular step in the Volterra march
  mismatch,   // grid and table disagree
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Shortest round-trip rendering of a number for error messages.
std::string format_number(double value);

class NumericError : public std::runtime_error {
 public:
  NumericError(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace fkin
