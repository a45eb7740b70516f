#pragma once

#include <stdexcept>
#include <string>

namespace flowclass {

/// Bad input: malformed literal, dimension mismatch, violated precondition.
class UsageError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Input text could not be parsed; carries the offending location in what().
class ParseError : public UsageError {
   public:
    using UsageError::UsageError;
};

/// A numerical procedure could not produce a trustworthy answer.
class NumericalError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Iteration cap reached without meeting the stopping criterion.
class NonConvergence : public NumericalError {
   public:
    using NumericalError::NumericalError;
};

/// Derived quantities contradict each other (non-monotone ranks, negative counts, ...).
class InconsistentInvariants : public NumericalError {
   public:
    using NumericalError::NumericalError;
};

/// Exact mode cannot represent the spectrum; use float mode or a spectrum document.
class FallbackNeeded : public NumericalError {
   public:
    using NumericalError::NumericalError;
};

}  // namespace flowclass
