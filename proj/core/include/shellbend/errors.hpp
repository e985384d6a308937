#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace shellbend {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Jet arithmetic: division by a (near-)zero denominator.
struct DivisionByZero : Error {
    using Error::Error;
};

/// Argument outside the real domain of a function (log of a negative
/// number, asin beyond [-1,1], fractional power of a non-positive base).
struct DomainError : Error {
    using Error::Error;
};

/// Malformed expression text. Carries the byte offset of the offending
/// token and the set of tokens that would have been accepted there.
struct ParseError : Error {
    ParseError(std::string msg, std::size_t offset, std::vector<std::string> expected)
        : Error(std::move(msg)), offset(offset), expected(std::move(expected)) {}

    std::size_t offset;
    std::vector<std::string> expected;
};

/// Identifier that is neither xi1/xi2, a declared parameter, nor a known
/// function name. Raised at surface validation, not at parse.
struct UnknownIdentifier : Error {
    UnknownIdentifier(std::string msg, std::size_t offset)
        : Error(std::move(msg)), offset(offset) {}

    std::size_t offset;
};

/// Evaluation point lies outside the surface's parameter domain.
struct OutsideParamDomain : Error {
    using Error::Error;
};

/// Tangent vectors nearly parallel: the surface is not immersed at the
/// requested point to working precision.
struct DegenerateImmersion : Error {
    using Error::Error;
};

/// Reference and deformed geometry were sampled at different coordinates.
struct MismatchedPoint : Error {
    using Error::Error;
};

/// The deformation gradient is locally rank-deficient; no polar factor.
struct SingularDeformation : Error {
    using Error::Error;
};

/// A scale factor that must be positive was not.
struct NonpositiveScale : Error {
    using Error::Error;
};

/// A rotation matrix failed the orthogonality or determinant check.
struct InvalidRotation : Error {
    using Error::Error;
};

/// A surface family could not produce an immersed sample within the retry cap.
struct FamilyExhausted : Error {
    using Error::Error;
};

/// Bad run configuration. `field` names the offending key or section.
struct ConfigError : Error {
    ConfigError(std::string msg, std::string field)
        : Error(std::move(msg)), field(std::move(field)) {}

    std::string field;
};

} // namespace shellbend
