#pragma once

#include <stdexcept>
#include <string>

namespace monalg {

/// Precondition or input-validity violation (bad matrix, failed hypothesis).
class DomainError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A configured cap (down-set size, search bound, ...) was exceeded.
class ResourceError : public std::runtime_error {
public:
  ResourceError(const std::string &what, std::string cap_name)
      : std::runtime_error(what), cap_(std::move(cap_name)) {}
  const std::string &cap() const noexcept { return cap_; }

private:
  std::string cap_;
};

/// Two routes that must agree did not. Always a bug, never a result.
class SoundnessError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Malformed input text; line/column are 1-based.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string &msg, int line, int column)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + msg),
        line_(line), column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

private:
  int line_;
  int column_;
};

// internal: thrown by CheckedInt, caught by the big-integer fallback
struct IntegerOverflow : std::overflow_error {
  IntegerOverflow() : std::overflow_error("int64 overflow") {}
};

} // namespace monalg
