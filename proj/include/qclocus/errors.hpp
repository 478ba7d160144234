#pragma once

#include <stdexcept>
#include <string>

namespace qclocus {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input text or files.
struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

/// A documented precondition was violated (singular model, zero polynomial, ...).
struct ContractError : Error {
    explicit ContractError(const std::string& msg) : Error(msg) {}
};

/// The request exceeds what the implementation supports (degree budgets,
/// tower embeddings outside the supported shapes).
struct CapabilityError : Error {
    explicit CapabilityError(const std::string& msg) : Error(msg) {}
};

/// A p-adic or series computation ran out of working precision.  Callers that
/// can report "undecided" catch this; everywhere else it propagates.
struct PrecisionError : Error {
    explicit PrecisionError(const std::string& msg) : Error(msg) {}
};

} // namespace qclocus
