#ifndef WSMAN_ERRORS_HPP
#define WSMAN_ERRORS_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace wsman {

/// Caller violated a documented precondition (bad index, size mismatch, field mismatch).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Mathematically undefined request, e.g. inverting zero.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

enum class WitnessKind { none, relay_set, source_set };

/// The topology does not admit what was asked for. Carries the violating subset (0-based).
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(const std::string& what, WitnessKind kind, std::vector<std::size_t> witness)
      : std::runtime_error(what), kind_(kind), witness_(std::move(witness)) {}

  WitnessKind kind() const noexcept { return kind_; }
  const std::vector<std::size_t>& witness() const noexcept { return witness_; }

 private:
  WitnessKind kind_;
  std::vector<std::size_t> witness_;
};

class RetryExhaustedError : public std::runtime_error {
 public:
  RetryExhaustedError(const std::string& what, std::size_t attempts)
      : std::runtime_error(what), attempts_(attempts) {}

  std::size_t attempts() const noexcept { return attempts_; }

 private:
  std::size_t attempts_;
};

/// Two routes that must agree did not. Indicates a bug, never bad input.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Nearest-codeword search found several messages at the same minimum distance.
class AmbiguousDecodeError : public std::runtime_error {
 public:
  AmbiguousDecodeError(std::vector<std::vector<std::uint32_t>> tied, std::size_t distance)
      : std::runtime_error("ambiguous decode: " + std::to_string(tied.size()) +
                           " messages at distance " + std::to_string(distance)),
        tied_(std::move(tied)),
        distance_(distance) {}

  const std::vector<std::vector<std::uint32_t>>& tied() const noexcept { return tied_; }
  std::size_t distance() const noexcept { return distance_; }

 private:
  std::vector<std::vector<std::uint32_t>> tied_;
  std::size_t distance_;
};

}  // namespace wsman

#endif  // WSMAN_ERRORS_HPP
