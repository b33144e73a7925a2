#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace trapspace {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or semantically invalid input: bad syntax, unknown names,
// inconsistent networks, preconditions the caller can fix.
class InputError : public Error {
 public:
  using Error::Error;
};

// A configured resource cap (support size, state-space size, solution
// limit, timeout) would be exceeded.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& message, std::size_t position)
      : InputError(message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class UnknownIdentifierError : public InputError {
 public:
  explicit UnknownIdentifierError(std::string identifier)
      : InputError("unknown identifier '" + identifier + "'"),
        identifier_(std::move(identifier)) {}

  const std::string& identifier() const { return identifier_; }

 private:
  std::string identifier_;
};

class SupportTooLargeError : public ResourceLimitError {
 public:
  SupportTooLargeError(std::size_t support, std::size_t cap)
      : ResourceLimitError("expression depends on " + std::to_string(support) +
                           " variables, support cap is " +
                           std::to_string(cap)),
        support_(support) {}

  std::size_t support() const { return support_; }

 private:
  std::size_t support_;
};

class CapExceededError : public ResourceLimitError {
 public:
  using ResourceLimitError::ResourceLimitError;
};

}  // namespace trapspace
