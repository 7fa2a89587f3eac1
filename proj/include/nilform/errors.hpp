#pragma once

#include <stdexcept>
#include <string>

namespace nilform {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed rational, expression, preset or JSON input.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Operands live in different generator lists.
class AlgebraMismatch : public Error {
public:
    using Error::Error;
};

/// A homogeneous element was required.
class InhomogeneousError : public Error {
public:
    using Error::Error;
};

/// The differential does not raise upper degree by exactly one.
class DegreeError : public Error {
public:
    using Error::Error;
};

/// d^2 != 0 on some generator.
class NotADifferential : public Error {
public:
    NotADifferential(std::string generator, std::string residual)
        : Error("d^2 != 0 on generator " + generator + ": d(d(" + generator + ")) = " + residual),
          generator_(std::move(generator)), residual_(std::move(residual)) {}

    const std::string& generator() const noexcept { return generator_; }
    const std::string& residual() const noexcept { return residual_; }

private:
    std::string generator_;
    std::string residual_;
};

class NotACocycle : public Error {
public:
    using Error::Error;
};

/// Cutoff exceeded, wrong parameter range, or a violated operation precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A degree-1 generated minimal (nilpotent) model was required.
class NotNilpotentModel : public Error {
public:
    using Error::Error;
};

class NotTwoStep : public Error {
public:
    using Error::Error;
};

class Unsupported : public Error {
public:
    using Error::Error;
};

}  // namespace nilform
