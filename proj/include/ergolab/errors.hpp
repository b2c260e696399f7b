#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace ergolab {

/// Bad input: violated precondition, malformed object, unknown option.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The state cannot exist at the requested energy (pendulum turning point).
class TurningPointError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// A computation produced NaN/Inf or could not make progress.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NonFiniteStateError : public NumericalError {
public:
    explicit NonFiniteStateError(const std::string& what,
                                 std::optional<std::size_t> step = std::nullopt)
        : NumericalError(step ? what + " (step " + std::to_string(*step) + ")" : what),
          step_(step) {}

    /// Index of the integration step that failed, when known.
    std::optional<std::size_t> step() const { return step_; }

private:
    std::optional<std::size_t> step_;
};

/// Rejection sampling gave up before finding a point of the target set.
class SamplingError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace ergolab
