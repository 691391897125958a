#pragma once

#include <stdexcept>
#include <string>

namespace encharm {

// Base for every error raised by the library. The subclasses map one-to-one
// onto the CLI exit codes (2 input, 3 domain, 4 resource).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input: aliasing grids, Nyquist violations,
// invalid parameters, unparsable config files.
class InvalidInput : public Error {
public:
    using Error::Error;
};

class AliasingError : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class NyquistError : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class ConfigError : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

// A mathematically valid request outside the domain of a formula:
// undefined angles, singular corrections, divergent bounds.
class DomainError : public Error {
public:
    using Error::Error;
};

class UndefinedAngleError : public DomainError {
public:
    using DomainError::DomainError;
};

class SingularCorrectionError : public DomainError {
public:
    using DomainError::DomainError;
};

// Taylor term enumeration would exceed the configured budget.
class ResourceError : public Error {
public:
    using Error::Error;
};

}  // namespace encharm
