#pragma once

#include <stdexcept>
#include <string>

namespace agl
{

// Base class for every error raised by the library. Callers that only care
// about "something was wrong with the input" can catch this one type.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Two interfaces (or carriers) that were required to agree do not.
class InterfaceMismatch : public Error
{
public:
    using Error::Error;
};

// A value violates a structural invariant of its type (a table that is not
// total, an entry outside its fiber, a non-simple interface where a simple
// one was required, ...).
class InvariantViolation : public Error
{
public:
    using Error::Error;
};

// A proof rule or checker was invoked but one of its premises does not hold.
class PremiseFailure : public Error
{
public:
    using Error::Error;
};

// A proof rule produced a conclusion that failed independent re-verification.
// Reaching this means the rule implementation is wrong.
class SoundnessError : public Error
{
public:
    using Error::Error;
};

// Numeric evaluation failure: division by zero, non-finite state, etc.
class EvaluationError : public Error
{
public:
    using Error::Error;
};

} // namespace agl
