#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace revcheck {

// Base for every error the library reports on bad input.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed dataset line. line() is 1-based and counts the header.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& reason)
        : Error("line " + std::to_string(line) + ": " + reason), line_(line), reason_(reason) {}

    std::size_t line() const noexcept { return line_; }
    const std::string& reason() const noexcept { return reason_; }

private:
    std::size_t line_;
    std::string reason_;
};

class LexiconError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class EvaluationError : public Error {
public:
    using Error::Error;
};

// Contingency table with a zero row or column sum.
class DegenerateTableError : public Error {
public:
    using Error::Error;
};

// A caller broke a precondition (duplicate rule id, record missing from index, ...).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace revcheck
