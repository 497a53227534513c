#pragma once

#include <stdexcept>
#include <string>

namespace ridgeframe {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

/// Sampling grid cannot represent the requested object (Nyquist or span).
class ResolutionError : public Error {
public:
    using Error::Error;
};

/// Evaluation point lies outside the domain of a sampled object.
class DomainError : public Error {
public:
    using Error::Error;
};

class NotAdmissible : public Error {
public:
    using Error::Error;
};

class SingularEvaluation : public Error {
public:
    SingularEvaluation(const std::string& what, double gamma)
        : Error(what), gamma_(gamma) {}
    double gamma() const noexcept { return gamma_; }

private:
    double gamma_;
};

/// Quadrature window leaves more mass outside than the configured tolerance.
class CoverageError : public Error {
public:
    CoverageError(const std::string& what, double defect)
        : Error(what), defect_(defect) {}
    double defect() const noexcept { return defect_; }

private:
    double defect_;
};

class PerpendicularWindows : public Error {
public:
    using Error::Error;
};

class SetupError : public Error {
public:
    using Error::Error;
};

/// Malformed or truncated input file.
class FormatError : public Error {
public:
    using Error::Error;
};

/// Two artifacts that must agree (table vs. sidecar, direction sets) do not.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

}  // namespace ridgeframe
