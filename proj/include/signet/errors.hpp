#pragma once

#include <stdexcept>
#include <string>

namespace signet {

// Malformed input text (graph files, mode specs, configuration strings).
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + std::move(message)
                                      : std::move(message)),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// An exact computation was requested above its size guard.
class GuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A simulation ran out of its step budget before reaching an attractor.
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A constructed object failed its simulation certificate.
class CertificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An operation was called outside its stated precondition.
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace signet
