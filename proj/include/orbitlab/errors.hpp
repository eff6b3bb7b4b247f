#pragma once

#include <stdexcept>
#include <string>

namespace orbitlab {

/// Process exit codes shared by every CLI command.
enum class ExitCode : int {
  kSuccess = 0,
  kValidation = 2,
  kBudget = 3,
  kInternal = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ExitCode code() const { return code_; }
  virtual const char* kind() const = 0;

 private:
  ExitCode code_;
};

/// Malformed input: bad files, non-group tables, broken structure constants.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(ExitCode::kValidation, what) {}
  const char* kind() const override { return "validation"; }
};

/// Mathematically undefined request (inverse of zero, exp with J^p != 0, ...).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ExitCode::kValidation, what) {}
  const char* kind() const override { return "domain"; }
};

/// Power-commutator presentation that does not define a group of order p^n.
class PresentationError : public Error {
 public:
  explicit PresentationError(const std::string& what) : Error(ExitCode::kValidation, what) {}
  const char* kind() const override { return "presentation"; }
};

/// A configured resource limit would be exceeded. Always names the budget.
class BudgetError : public Error {
 public:
  BudgetError(std::string budget, const std::string& what)
      : Error(ExitCode::kBudget, "budget '" + budget + "' exceeded: " + what),
        budget_(std::move(budget)) {}
  const char* kind() const override { return "budget"; }
  const std::string& budget() const { return budget_; }

 private:
  std::string budget_;
};

/// An invariant that holds by theorem failed. This is always a bug.
class InternalError : public Error {
 public:
  explicit InternalError(const std::string& what) : Error(ExitCode::kInternal, what) {}
  const char* kind() const override { return "internal"; }
};

void check_internal(bool ok, const std::string& what);

}  // namespace orbitlab
