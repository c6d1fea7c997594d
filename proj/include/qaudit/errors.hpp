#pragma once

#include <stdexcept>
#include <string>

namespace qaudit {

// Base for all toolkit errors so the CLI can map them to exit codes.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad input data: malformed spin cells, ragged CSV rows, nonsense spins.
struct ParseError : Error {
    ParseError(const std::string& what, std::size_t row, std::size_t col)
        : Error(what + " (row " + std::to_string(row) + ", column " + std::to_string(col) + ")"),
          row(row), col(col) {}
    std::size_t row;
    std::size_t col;
};

// Packed stream and its sidecar metadata disagree, or the file is truncated.
struct CorruptStreamError : Error {
    using Error::Error;
};

// A .bits file has no sidecar and the caller gave no explicit bit count.
struct ExplicitLengthRequiredError : Error {
    using Error::Error;
};

// Invalid configuration: out-of-range knobs, bad masks, unknown keys.
struct ConfigError : Error {
    using Error::Error;
};

// Checkpoint directory holds results produced under a different config.
struct CheckpointMismatchError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

} // namespace qaudit
