#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qip {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ValidationErrorKind {
  DimensionMismatch,
  EmptyVariableSet,
  MalformedColumnIndex,
  InvalidName,
};

class ValidationError : public Error {
 public:
  ValidationError(ValidationErrorKind kind, const std::string& what)
      : Error(what), kind_(kind) {}
  ValidationErrorKind kind() const noexcept { return kind_; }

 private:
  ValidationErrorKind kind_;
};

enum class ParseErrorKind { Syntax, Semantic };

/// Text-format errors. Line and column are 1-based; column 0 means the error
/// concerns the whole line (or the whole document when line is 0 too).
class ParseError : public Error {
 public:
  ParseError(ParseErrorKind kind, std::size_t line, std::size_t column,
             const std::string& message)
      : Error(format(kind, line, column, message)),
        kind_(kind),
        line_(line),
        column_(column),
        message_(message) {}

  ParseErrorKind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }

 private:
  static std::string format(ParseErrorKind kind, std::size_t line,
                            std::size_t column, const std::string& message) {
    std::string out = kind == ParseErrorKind::Syntax ? "syntax error" : "semantic error";
    if (line > 0) {
      out += " at line " + std::to_string(line);
      if (column > 0) out += ", column " + std::to_string(column);
    }
    return out + ": " + message;
  }

  ParseErrorKind kind_;
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

/// A documented precondition of an operation was violated by the caller.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An operation refused to run because its input exceeds a configured cap.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace qip
