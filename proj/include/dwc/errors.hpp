#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dwc {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed user input: bad polynomial text, mismatched variables, bad job.
class InputError : public Error {
public:
    using Error::Error;
};

class ParseError : public InputError {
public:
    ParseError(const std::string& what, std::size_t position)
        : InputError(what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Operation requires a smooth hypersurface (finite Jacobian ring).
class NotSmooth : public Error {
public:
    using Error::Error;
};

/// A rational function was evaluated at a root of its denominator.
class DiscriminantError : public Error {
public:
    using Error::Error;
};

/// Consecutive differentials of an assembled complex did not compose to zero.
class NilpotenceViolation : public Error {
public:
    using Error::Error;
};

/// Truncated cohomology did not stabilize before the policy's max bound.
class Unstabilized : public Error {
public:
    using Error::Error;
};

}  // namespace dwc
