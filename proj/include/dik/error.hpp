#pragma once

#include <stdexcept>
#include <string>

namespace dik {

// Base of every error the library throws. `exit_code()` is what the CLI
// reports: 2 for unreadable or malformed input, 3 for semantic failures.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual int exit_code() const noexcept { return 3; }
};

class MalformedInput : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 2; }
};

// Input document could not be parsed. Carries the 1-based source line when known.
class ParseError : public MalformedInput {
public:
    ParseError(const std::string& source, std::size_t line, const std::string& what)
        : MalformedInput(source + (line ? ":" + std::to_string(line) : std::string()) + ": " + what),
          line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class DomainError : public Error { using Error::Error; };
class ParameterError : public Error { using Error::Error; };
class ConstraintError : public Error { using Error::Error; };
class SignatureError : public Error { using Error::Error; };
class IncompleteInterpretation : public Error { using Error::Error; };
class CapabilityError : public Error { using Error::Error; };
class AdmissionError : public Error { using Error::Error; };
class OrderViolation : public Error { using Error::Error; };
class RuleError : public Error { using Error::Error; };

}  // namespace dik
