#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace steinerq {

// Malformed textual input. `position` is the zero-based offset of the first
// offending character.
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& message, std::size_t position)
      : std::runtime_error(message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// A bounded operation ran past its configured resource cap. The partial
// result is discarded; callers may retry with a larger cap.
class cap_exceeded : public std::runtime_error {
 public:
  explicit cap_exceeded(const std::string& message) : std::runtime_error(message) {}
};

// Structurally well-formed input that violates a domain-level requirement
// (duplicate block pair, bad variable index, non-reduced image, ...).
class validation_error : public std::runtime_error {
 public:
  explicit validation_error(const std::string& message) : std::runtime_error(message) {}
};

}  // namespace steinerq
