#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qd1 {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (vp(0), bezout(0, 0), non-prime key, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

class NotInvertibleError : public Error {
public:
    using Error::Error;
};

/// The rational part of an element has a denominator prime that the group does not allow there.
class InvalidDenominatorError : public Error {
public:
    InvalidDenominatorError(std::string prime, const std::string& what)
        : Error(what), prime_(std::move(prime)) {}
    const std::string& prime() const noexcept { return prime_; }

private:
    std::string prime_;
};

class GroupMismatchError : public Error {
public:
    GroupMismatchError() : Error("elements belong to different groups") {}
};

/// Operation requested outside the case it is defined for.
class UnsupportedCaseError : public Error {
public:
    using Error::Error;
};

class NotMemberError : public Error {
public:
    using Error::Error;
};

class RingIsAiError : public Error {
public:
    RingIsAiError() : Error("ring is an AI-ring; no non-absolute principal ideal exists") {}
};

class VariantMismatchError : public Error {
public:
    using Error::Error;
};

/// Text parse failure; `position` is a 0-based offset into the parsed string.
class ParseError : public Error {
public:
    ParseError(std::size_t position, const std::string& detail)
        : Error("parse error at position " + std::to_string(position) + ": " + detail),
          position_(position), detail_(detail) {}
    std::size_t position() const noexcept { return position_; }
    /// What was expected at `position`, or why the token there was rejected.
    const std::string& detail() const noexcept { return detail_; }

private:
    std::size_t position_;
    std::string detail_;
};

} // namespace qd1
