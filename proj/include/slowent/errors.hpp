#pragma once

#include <stdexcept>
#include <string>

namespace slowent {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class ContainmentViolation : public Error {
public:
    using Error::Error;
};

class NotUnipotent : public Error {
public:
    using Error::Error;
};

class NotNilpotent : public Error {
public:
    using Error::Error;
};

class SearchExhausted : public Error {
public:
    using Error::Error;
};

class SurjectivityFailure : public Error {
public:
    SurjectivityFailure(std::size_t level, const std::string& what)
        : Error(what), level_(level) {}
    std::size_t level() const noexcept { return level_; }

private:
    std::size_t level_;
};

class ChainBasisMissing : public Error {
public:
    using Error::Error;
};

class InsufficientAcceptance : public Error {
public:
    using Error::Error;
};

class ParameterRange : public Error {
public:
    using Error::Error;
};

/// Malformed input (file contents, CLI arguments, spec strings).
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace slowent
