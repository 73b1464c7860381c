#pragma once

#include <stdexcept>

namespace ctrlplace {

/// Base class of every error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Filesystem or stream failure.
struct IoError : Error {
    using Error::Error;
};

/// Malformed input text. Messages carry the row/column or line location.
struct ParseError : Error {
    using Error::Error;
};

/// Structurally readable input or configuration that violates a model rule.
struct ValidationError : Error {
    using Error::Error;
};

/// Well-formed problem the requested algorithm cannot handle, e.g. a
/// disconnected graph or an enumeration larger than the evaluation budget.
struct InfeasibleError : Error {
    using Error::Error;
};

} // namespace ctrlplace
