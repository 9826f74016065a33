#ifndef DCEC_CORE_ERROR_HPP
#define DCEC_CORE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace dcec {

struct Position {
  int line = 0;
  int column = 0;
};

std::string to_string(const Position& pos);

/// Malformed input text: lexical errors, unknown symbols, arity and sort
/// mismatches. Always carries the position of the offending token.
class ParseError : public std::runtime_error {
 public:
  ParseError(Position pos, const std::string& message)
      : std::runtime_error(to_string(pos) + ": " + message), pos_(pos), message_(message) {}

  const Position& position() const { return pos_; }
  const std::string& message() const { return message_; }

 private:
  Position pos_;
  std::string message_;
};

/// An ill-sorted term or formula built programmatically.
class SortError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dcec

#endif  // DCEC_CORE_ERROR_HPP
