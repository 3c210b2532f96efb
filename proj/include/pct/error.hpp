#pragma once

#include <stdexcept>
#include <string>

namespace pct {

/// Base for every error raised by the library. The CLI maps the concrete
/// subclasses onto exit codes (config 1, data 2, anything else 3).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input data (files, cells, facts).
class DataError : public Error {
 public:
  using Error::Error;
};

/// Invalid run configuration or argument values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Syntax error in a text format, with 1-based position.
class ParseError : public DataError {
 public:
  ParseError(const std::string& what, int line, int column)
      : DataError(what + " at line " + std::to_string(line) + ", column " +
                  std::to_string(column)),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

class DistanceUndefined : public Error {
 public:
  using Error::Error;
};

class EmptyCluster : public Error {
 public:
  using Error::Error;
};

class InvalidPartition : public Error {
 public:
  using Error::Error;
};

class TooFewExamples : public Error {
 public:
  using Error::Error;
};

class REUndefined : public Error {
 public:
  using Error::Error;
};

}  // namespace pct
