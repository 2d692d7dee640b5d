#pragma once

#include <stdexcept>
#include <string>

namespace regrkit {

/// Broad failure class; the CLI maps each category to its exit code.
enum class ErrorCategory {
  usage,      ///< bad arguments or flag combinations
  data,       ///< unreadable, malformed or inconsistent input
  numerical,  ///< singular systems, non-convergence
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(ErrorCategory::data, what) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what)
      : Error(ErrorCategory::numerical, what) {}
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(ErrorCategory::usage, what) {}
};

// Specific data errors, so callers (and tests) can tell them apart.

class WidthMismatchError : public DataError {
 public:
  WidthMismatchError(std::size_t row, std::size_t expected, std::size_t got);
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

class NonFiniteValueError : public DataError {
 public:
  using DataError::DataError;
};

class DuplicateAttributeError : public DataError {
 public:
  using DataError::DataError;
};

class UnknownAttributeError : public DataError {
 public:
  explicit UnknownAttributeError(const std::string& name);
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class LabelAttributeError : public DataError {
 public:
  explicit LabelAttributeError(const std::string& name);
};

class EmptyDatasetError : public DataError {
 public:
  using DataError::DataError;
};

/// Raised when a column with zero spread is used where spread is required
/// (correlation, min-max and z-score filters).
class ConstantColumnError : public DataError {
 public:
  explicit ConstantColumnError(const std::string& what) : DataError(what) {}
};

class MalformedQuantityError : public DataError {
 public:
  explicit MalformedQuantityError(const std::string& what) : DataError(what) {}
};

/// ARFF or CSV syntax problem; carries the 1-based source line when known.
class ParseError : public DataError {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class MissingValueError : public ParseError {
 public:
  using ParseError::ParseError;
};

class DegenerateSystemError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NonConvergenceError : public NumericalError {
 public:
  NonConvergenceError(long updates, double violation);
  double violation() const noexcept { return violation_; }

 private:
  double violation_;
};

}  // namespace regrkit
