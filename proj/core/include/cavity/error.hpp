#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cavity {

enum class ErrorKind {
  domain,
  validation,
  parse,
  schema,
  modal_resonance,
  connection_resonance,
  system_singular,
  unsupported,
  order_too_high,
  non_convergence,
  io,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library. The kind is stable and machine
/// checkable; the message carries the offending field, mode or path.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), message_(what) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// what() without the kind prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

}  // namespace cavity
