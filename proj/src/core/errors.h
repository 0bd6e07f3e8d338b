#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tonemorph {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

/// Malformed input bytes or text. `offset` is a byte offset for binary
/// input and a character offset for single-line text; line-oriented
/// parsers put the line number in the message instead.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message) : Error(message), offset_(kNoOffset) {}
  ParseError(const std::string& message, size_t offset)
      : Error(message + " (offset " + std::to_string(offset) + ")"), offset_(offset) {}

  static constexpr size_t kNoOffset = static_cast<size_t>(-1);
  size_t offset() const { return offset_; }

 private:
  size_t offset_;
};

/// A constraint system admits no value for some variable.
class InfeasibleError : public Error {
 public:
  InfeasibleError(const std::string& message, int note_index)
      : Error(message), note_index_(note_index) {}

  int note_index() const { return note_index_; }

 private:
  int note_index_;
};

}  // namespace tonemorph
