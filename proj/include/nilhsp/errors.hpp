#ifndef NILHSP_ERRORS_HPP
#define NILHSP_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nilhsp {

/// Malformed text input (sequence files, group tables, CLI lists).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A zero-sum finder was handed fewer vectors than its length schedule needs.
class SequenceTooShort : public std::invalid_argument {
 public:
  SequenceTooShort(std::uint64_t required, std::uint64_t actual)
      : std::invalid_argument("sequence too short: need " + std::to_string(required) +
                              " vectors, got " + std::to_string(actual)),
        required_(required),
        actual_(actual) {}
  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t actual() const noexcept { return actual_; }

 private:
  std::uint64_t required_;
  std::uint64_t actual_;
};

/// An enumeration or dense-simulation routine would exceed its desk-scale cap.
class BudgetExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A recomputed value disagrees with the value a construction step claimed.
/// Always an implementation bug, never a user error.
class VerificationFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The HSMC oracle was queried outside its contract.
class ProtocolViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotNilpotent : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace nilhsp

#endif
