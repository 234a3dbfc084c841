// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace witt {

/// Base of every error raised by the library. The exit code is what the CLI
/// reports when the error escapes a subcommand.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what, int exit_code)
        : std::runtime_error(what), exit_code_(exit_code) {}

    int exit_code() const noexcept { return exit_code_; }

private:
    int exit_code_;
};

/// Bad input: malformed specs, mismatched operands, out-of-range levels.
class UsageError : public Error {
public:
    explicit UsageError(const std::string& what) : Error(what, 1) {}
};

/// Syntax error in a ring spec, polynomial or element literal.
class ParseError : public UsageError {
public:
    ParseError(const std::string& what, std::size_t offset)
        : UsageError(what + " (at offset " + std::to_string(offset) + ")"), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// The ring lacks an operation the caller needs, or a constructive step has
/// no solution (e.g. an element outside the required ideal).
class CapabilityError : public Error {
public:
    explicit CapabilityError(const std::string& what) : Error(what, 2) {}
};

/// A certificate or re-verification did not hold.
class VerificationError : public Error {
public:
    explicit VerificationError(const std::string& what) : Error(what, 3) {}
};

/// A mathematical invariant the library relies on was violated; always a defect.
class InternalError : public Error {
public:
    explicit InternalError(const std::string& what) : Error(what, 4) {}
};

}  // namespace witt
