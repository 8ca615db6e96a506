#ifndef LINTS_ERRORS_HPP_
#define LINTS_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <vector>

namespace lints {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string &what) : std::runtime_error(what) {}
};

/// Input data failed validation (bad trace file, malformed request, ...).
class InputError : public Error {
 public:
  explicit InputError(const std::string &what) : Error(what) {}
};

/// A scheduling algorithm could not produce a feasible plan.
/// Carries the ids of the requests whose constraints are binding.
class UnschedulableError : public Error {
 public:
  UnschedulableError(const std::string &what, std::vector<std::string> ids)
      : Error(what), request_ids(std::move(ids)) {}

  std::vector<std::string> request_ids;
};

}  // namespace lints

#endif  // LINTS_ERRORS_HPP_
