#pragma once

#include <stdexcept>
#include <string>

namespace prolearn {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Shape mismatch or non-positive dimension.
struct DimensionError : Error {
    using Error::Error;
};

// Pivot collapse during elimination; signals rank deficiency.
struct SingularError : Error {
    using Error::Error;
};

// Label not present in the class registry.
struct UnknownClassError : Error {
    using Error::Error;
};

// Label offered as new but already registered.
struct DuplicateClassError : UnknownClassError {
    using UnknownClassError::UnknownClassError;
};

struct EmptyChunkError : Error {
    using Error::Error;
};

struct EmptyDatasetError : Error {
    using Error::Error;
};

// Too few samples (or classes) to solve the initial system.
struct InsufficientDataError : Error {
    using Error::Error;
};

struct ParseError : Error {
    std::size_t line;
    ParseError(const std::string& msg, std::size_t line_no)
        : Error(msg + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
};

struct ScheduleError : Error {
    using Error::Error;
};

struct SplitError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

} // namespace prolearn
