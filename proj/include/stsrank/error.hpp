#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stsrank {

/// Error categories surfaced by the library. The CLI maps these onto exit codes.
enum class ErrorKind {
    Parameter,        // invalid (p, n, t) or malformed arguments
    Domain,           // input is not the kind of object the operation needs
    Resource,         // a desk-scale cap would be exceeded
    UnknownConstant,  // a count constant is neither enumerable nor tabulated
    Containment,      // a system is not contained in the weight-3 design
    Structure,        // malformed recipe
    TheoremViolation, // structural invariant failed on valid input
    Consistency,      // internal exactness check failed (e.g. non-integral quotient)
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ParameterError : public Error {
public:
    explicit ParameterError(const std::string& m) : Error(ErrorKind::Parameter, m) {}
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& m) : Error(ErrorKind::Domain, m) {}
};

class ResourceError : public Error {
public:
    explicit ResourceError(const std::string& m) : Error(ErrorKind::Resource, m) {}
};

class UnknownConstantError : public Error {
public:
    explicit UnknownConstantError(const std::string& m) : Error(ErrorKind::UnknownConstant, m) {}
};

class ContainmentError : public Error {
public:
    explicit ContainmentError(const std::string& m) : Error(ErrorKind::Containment, m) {}
};

class StructureError : public Error {
public:
    explicit StructureError(const std::string& m) : Error(ErrorKind::Structure, m) {}
};

class TheoremViolation : public Error {
public:
    explicit TheoremViolation(const std::string& m) : Error(ErrorKind::TheoremViolation, m) {}
};

class ConsistencyError : public Error {
public:
    explicit ConsistencyError(const std::string& m) : Error(ErrorKind::Consistency, m) {}
};

} // namespace stsrank
