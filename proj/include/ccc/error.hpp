#pragma once

#include <stdexcept>
#include <string>

namespace ccc {

/// Base of every exception thrown by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Caller broke an operation's contract (size mismatch, bad partition, ...).
class precondition_error : public error {
public:
    using error::error;
};

/// The requested object cannot be built by the available constructions.
class construction_error : public error {
public:
    using error::error;
};

/// Malformed document or unreadable input. `where` names the offending field.
class parse_error : public error {
public:
    parse_error(std::string where, const std::string& what)
        : error(where.empty() ? what : where + ": " + what), where_(std::move(where)) {}

    const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

/// A file could not be read or written.
class io_error : public error {
public:
    using error::error;
};

} // namespace ccc
