#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace kbw {

// Base of every error the library raises. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside an operation's domain (composite where a prime is required,
// k > n for Stirling numbers, zero denominators, unknown names, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class EmptyRangeError : public DomainError {
 public:
  using DomainError::DomainError;
};

class NotInvertibleError : public DomainError {
 public:
  NotInvertibleError(const std::string& what, std::uint64_t gcd)
      : DomainError(what), gcd_(gcd) {}
  std::uint64_t gcd() const noexcept { return gcd_; }

 private:
  std::uint64_t gcd_;
};

// A request exceeds a configured kernel or table cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// An internal invariant failed, e.g. a division by p that was not exact.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class CorruptCheckpoint : public Error {
 public:
  using Error::Error;
};

}  // namespace kbw
