#pragma once

#include <stdexcept>
#include <string>

namespace fpe {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Array shapes disagree with the grid they claim to live on.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A scalar argument is outside its admissible range.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// The grid is too coarse for the requested stencil or mode count.
class ResolutionError : public Error {
public:
    using Error::Error;
};

/// Root finding failed to locate a sign change of the dispersion function.
class NoRootError : public Error {
public:
    using Error::Error;
};

/// Least-squares growth fit is ill-defined (too few or nonpositive samples).
class FitError : public Error {
public:
    using Error::Error;
};

/// Ratio with vanishing denominator in the inequality lab.
class UndefinedRatioError : public Error {
public:
    using Error::Error;
};

/// Configuration failed to parse or validate.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// File-system failure; the message carries the offending path.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace fpe
