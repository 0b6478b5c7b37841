#pragma once

#include <stdexcept>
#include <string>

namespace dpcolor {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DisconnectedInput : public Error {
public:
    DisconnectedInput() : Error("graph is not connected") {}
};

class TooLarge : public Error {
public:
    explicit TooLarge(const std::string& what) : Error("instance too large: " + what) {}
};

class InvalidParams : public Error {
public:
    using Error::Error;
};

class NotTwoTerminal : public Error {
public:
    using Error::Error;
};

/// Raised when a proof step produces a shape the argument rules out.
/// Seeing one of these means an implementation bug, never bad luck.
class InvariantBreach : public Error {
public:
    using Error::Error;
};

class ShapeViolation : public InvariantBreach {
public:
    using InvariantBreach::InvariantBreach;
};

class ValidityLost : public InvariantBreach {
public:
    using InvariantBreach::InvariantBreach;
};

class NoAdmissibleNode : public InvariantBreach {
public:
    using InvariantBreach::InvariantBreach;
};

class HypothesisViolated : public Error {
public:
    using Error::Error;
};

class PreconditionViolated : public Error {
public:
    using Error::Error;
};

class OracleBudget : public Error {
public:
    OracleBudget() : Error("oracle budget exhausted") {}
};

class ParseError : public Error {
public:
    ParseError(int line, const std::string& msg)
        : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

} // namespace dpcolor
