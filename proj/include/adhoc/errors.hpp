#ifndef ADHOC_ERRORS_HPP
#define ADHOC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace adhoc {

/// Bad argument or malformed domain data.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Illegal joint action in the current state.
class TransitionError : public std::runtime_error {
 public:
  explicit TransitionError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Policy evaluation did not reach the requested accuracy.
class NonConvergenceError : public std::runtime_error {
 public:
  explicit NonConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A trajectory never left the comparison policy's support.
class DivergenceImpossibleError : public std::runtime_error {
 public:
  explicit DivergenceImpossibleError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Evidence eliminated every candidate goal.
class InconsistentObservationError : public std::runtime_error {
 public:
  explicit InconsistentObservationError(const std::string& msg) : std::runtime_error(msg) {}
};

class LivelockError : public std::runtime_error {
 public:
  explicit LivelockError(const std::string& msg) : std::runtime_error(msg) {}
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace adhoc

#endif  // ADHOC_ERRORS_HPP
