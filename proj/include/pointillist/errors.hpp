#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pointillist {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an operation's arguments was violated.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// A requested gram (or other keyed entity) does not exist.
class NotFoundError : public Error {
public:
    using Error::Error;
};

/// Invalid input record. Carries the 1-based input line it came from (0 if unknown).
class RecordError : public Error {
public:
    enum class Kind { Malformed, MissingField, Range, Duplicate };

    RecordError(Kind kind, std::size_t line, const std::string& message)
        : Error(line ? "line " + std::to_string(line) + ": " + message : message),
          kind_(kind), line_(line) {}

    Kind kind() const noexcept { return kind_; }
    std::size_t line() const noexcept { return line_; }

private:
    Kind kind_;
    std::size_t line_;
};

class SnapshotError : public Error {
public:
    enum class Kind { Io, BadMagic, VersionMismatch, Truncated, ChecksumMismatch, Partial, Corrupt };

    SnapshotError(Kind kind, const std::string& message) : Error(message), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// Similarity between two trend clusters is undefined (an empty weight vector).
class UndefinedLinkError : public Error {
public:
    using Error::Error;
};

/// Synthetic corpus configuration is invalid.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace pointillist
