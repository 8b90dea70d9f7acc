#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ioncav {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside an operation's documented domain.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The requested quantity does not exist in this parameter regime
/// (no revivals when overdamped, no steady squeeze at equal coupling, ...).
class RegimeError : public Error {
 public:
  using Error::Error;
};

/// A closed-form expression left its domain of validity: a logarithm or
/// square-root argument went non-positive. Carries the offending time.
class ValidityError : public Error {
 public:
  ValidityError(const std::string& what, double t) : Error(what), time_(t) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// Series or truncation budget cannot meet the requested tolerance.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// Integrator failed its stability or step-halving checks.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

using WarningHandler = std::function<void(std::string_view)>;

/// Installs a sink for non-fatal diagnostics (truncation coverage and the
/// like). Passing an empty handler restores the default, which writes to
/// stderr. Returns the previous handler.
WarningHandler set_warning_handler(WarningHandler handler);

void warn(std::string_view message);

}  // namespace ioncav
