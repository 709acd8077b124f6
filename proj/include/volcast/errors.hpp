#pragma once

#include <stdexcept>
#include <string>

namespace volcast {

// Base class for all domain errors raised by the library. Keeping the
// hierarchy flat lets callers catch either a specific failure mode or
// everything volcast-related in one handler.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input data violates a structural or numeric precondition (bad price,
// duplicate date, malformed row). Messages identify the offending cell.
class ValidationError : public Error {
public:
    using Error::Error;
};

// A requested symbol is absent from the input.
class MissingSymbolError : public Error {
public:
    using Error::Error;
};

// Alignment produced a panel with no rows.
class EmptyPanelError : public Error {
public:
    using Error::Error;
};

// Not enough history to satisfy a window or lag requirement.
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

// Two objects that must share symbols, horizon, or anchors do not.
class AlignmentError : public Error {
public:
    using Error::Error;
};

// An operation was called outside its stated contract (e.g. scaling a
// matrix that is not a one-day forecast).
class ContractError : public Error {
public:
    using Error::Error;
};

// Correlation requested for an asset with zero realized variance.
class DegenerateVolatilityError : public Error {
public:
    using Error::Error;
};

// Loss differential has no usable variance (identical series).
class DegenerateVarianceError : public Error {
public:
    using Error::Error;
};

// Backtest evaluation range selected no anchors.
class EmptyEvaluationError : public Error {
public:
    using Error::Error;
};

// Strategy evaluation needs at least two anchors.
class InsufficientAnchorsError : public Error {
public:
    using Error::Error;
};

// A lambda was requested that is not on the backtest grid.
class UnknownLambdaError : public Error {
public:
    using Error::Error;
};

// Serialization was asked to write an empty result.
class EmptyInputError : public Error {
public:
    using Error::Error;
};

// Destination file could not be written or a source file read.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace volcast
