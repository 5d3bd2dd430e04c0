#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncsim {

// Base for every error raised by the library. Callers that only need a
// message can catch this; the CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ViolationKind {
  CyclicDag,
  UnknownNodeReference,
  UnknownTaskReference,
  DuplicateId,
  MissingPosition,
  InvalidValue,
};

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string message;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations);

  const std::vector<Violation>& violations() const { return violations_; }
  bool has(ViolationKind kind) const;

 private:
  std::vector<Violation> violations_;
};

// Engine logic bug: a task was asked to move along an edge the lifecycle
// does not have.
class IllegalTransition : public Error {
 public:
  using Error::Error;
};

class NonPositiveDistance : public Error {
 public:
  using Error::Error;
};

class MissingPosition : public Error {
 public:
  using Error::Error;
};

class UnpinnedTask : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class NonQuiescent : public Error {
 public:
  using Error::Error;
};

class IncompleteGrid : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed document. Line and column are 1-based; zero means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Well-formed document that does not match the scenario schema.
class SchemaError : public Error {
 public:
  SchemaError(const std::string& key, const std::string& message);

  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

}  // namespace ncsim
