#pragma once

#include <stdexcept>
#include <string>

namespace holochiral {

// Raised when a caller hands in a value that breaks a documented precondition
// (non-hermitian generator, mismatched dimensions, non-cyclic frame, ...).
class ContractViolation : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

// Propagation or reconstruction produced something unphysical.
class NumericalFailure : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Time grid too coarse to resolve a pulse to the required accuracy.
class ResolutionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A pulse family could not satisfy its geometric condition.
class ConditionViolation : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Loop path passes through a pole of the cyclic basis where the inverse
// formulas are undefined.
class SingularPath : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
  public:
    ConfigError(std::string key, int line, const std::string& what)
        : std::runtime_error(what), key_(std::move(key)), line_(line) {}

    const std::string& key() const { return key_; }
    int line() const { return line_; }

  private:
    std::string key_;
    int line_;
};

}  // namespace holochiral
