#pragma once

#include <stdexcept>

namespace oklab {

/// An operation was called outside its domain (non-nef input, non-big class, ...).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed fan, flag, or catalog entry.
class ToricError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The superadditivity inclusion Delta(N1) + Delta(N2) in Delta(N1 + N2) failed.
class InclusionViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace oklab

namespace oklab {

/// Bad command-line or run configuration.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace oklab
