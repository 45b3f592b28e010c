#pragma once

#include <stdexcept>
#include <string>

namespace globeprobe {

/// Base class for every error raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad usage or configuration (CLI maps these to exit code 2).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Network-level failures (CLI exit code 3).
class TransportError : public Error {
public:
    using Error::Error;
};

/// Data, schema or validation problems (CLI exit code 4).
class DataError : public Error {
public:
    using Error::Error;
};

/// Argument outside its mathematical domain.
class DomainError : public DataError {
public:
    using DataError::DataError;
};

// -- survey catalog --
class UnsupportedLocaleError : public ConfigError {
public:
    using ConfigError::ConfigError;
};
class UnknownItemError : public DataError {
public:
    using DataError::DataError;
};

// -- gateway --
class AuthError : public ConfigError {
public:
    using ConfigError::ConfigError;
};
class RateLimitError : public TransportError {
public:
    using TransportError::TransportError;
};
class TransportExhaustedError : public TransportError {
public:
    using TransportError::TransportError;
};
class DuplicateRecordError : public DataError {
public:
    using DataError::DataError;
};
class TranscriptExhaustedError : public DataError {
public:
    using DataError::DataError;
};
class LocaleMismatchError : public DataError {
public:
    using DataError::DataError;
};
class UnknownRunError : public DataError {
public:
    using DataError::DataError;
};

// -- reply parsing --
class ParseError : public DataError {
public:
    using DataError::DataError;
};
class NoNumberFoundError : public ParseError {
public:
    using ParseError::ParseError;
};
class OutOfRangeError : public ParseError {
public:
    using ParseError::ParseError;
};

// -- scoring --
class MissingItemError : public DataError {
public:
    using DataError::DataError;
};

// -- regression --
class SingularDesignError : public DataError {
public:
    using DataError::DataError;
};
class JoinError : public DataError {
public:
    using DataError::DataError;
};
class SchemaError : public DataError {
public:
    using DataError::DataError;
};

}  // namespace globeprobe
