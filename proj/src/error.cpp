#include "fkin/error.hpp"

#include <charconv>

namespace fkin {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::domain:
      return "domain error";
    case ErrorKind::pole:
      return "pole error";
    case ErrorKind::overflow:
      return "overflow error";
    case ErrorKind::range:
      return "range error";
    case ErrorKind::invariant:
      return "invariant violation";
    case ErrorKind::singular:
      return "singular step";
    case ErrorKind::mismatch:
      return "grid mismatch";
  }
  return "error";
}

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

NumericError::NumericError(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind) {}

}  // namespace fkin
