#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace taskweave {

// Base of every error the library raises. `kind()` is a stable identifier
// used when errors cross the HTTP/CLI boundary.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line = 0, std::size_t column = 0)
      : Error("ParseError", format(message, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& message, std::size_t line, std::size_t column) {
    if (line == 0) return message;
    return message + " at line " + std::to_string(line) + ", column " + std::to_string(column);
  }

  std::size_t line_;
  std::size_t column_;
};

// Errors that name a single offending identifier (a key, a message, a task id).
class NamedError : public Error {
 public:
  NamedError(std::string kind, std::string name, const std::string& message)
      : Error(std::move(kind), message), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class ReferenceError : public NamedError {
 public:
  explicit ReferenceError(std::string name, const std::string& context = "unresolved reference")
      : NamedError("ReferenceError", name, context + ": " + name) {}
};

class DuplicateKeyError : public NamedError {
 public:
  explicit DuplicateKeyError(std::string name)
      : NamedError("DuplicateKeyError", name, "duplicate key: " + name) {}
};

class MissingDescriptionError : public NamedError {
 public:
  explicit MissingDescriptionError(std::string serviceKey)
      : NamedError("MissingDescriptionError", serviceKey,
                   "no service description for " + serviceKey) {}
};

class MissingSpecError : public NamedError {
 public:
  explicit MissingSpecError(std::string taskId)
      : NamedError("MissingSpecError", taskId, "service task has no spec: " + taskId) {}
};

class BadTargetError : public NamedError {
 public:
  explicit BadTargetError(std::string taskId)
      : NamedError("BadTargetError", taskId, "spec targets a node that is not a service task: " + taskId) {}
};

class ContractError : public Error {
 public:
  explicit ContractError(const std::string& message) : Error("ContractError", message) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& message) : Error("ValidationError", message) {}
};

class NotFoundError : public NamedError {
 public:
  explicit NotFoundError(std::string name)
      : NamedError("NotFoundError", name, "not found: " + name) {}
};

class ConflictError : public NamedError {
 public:
  explicit ConflictError(std::string missing)
      : NamedError("ConflictError", missing, "missing prerequisite: " + missing) {}
};

}  // namespace taskweave
