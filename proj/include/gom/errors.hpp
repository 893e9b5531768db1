#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gom {

/// Bad parameters or inconsistent inputs supplied by the caller.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Filesystem or format problems while reading or writing artifacts.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed edge-list input. Carries the offending 1-based line number
/// (0 when the error is not tied to a line, e.g. empty input).
class ParseError : public IoError {
public:
    ParseError(std::size_t line, const std::string& what)
        : IoError(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

    /// Same error with `context` (typically a file name) prepended.
    ParseError with_context(const std::string& context) const {
        return ParseError(line_, context + ": " + what(), Raw{});
    }

    std::size_t line() const noexcept { return line_; }

private:
    struct Raw {};
    ParseError(std::size_t line, const std::string& what, Raw) : IoError(what), line_(line) {}

    std::size_t line_;
};

/// Iterative solvers that fail to reach their tolerance.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, std::size_t iterations)
        : std::runtime_error(what + " (after " + std::to_string(iterations) + " iterations)"),
          iterations_(iterations) {}

    std::size_t iterations() const noexcept { return iterations_; }

private:
    std::size_t iterations_;
};

/// A cluster too small to supply the per-cluster training quota.
class InfeasibleQuotaError : public std::runtime_error {
public:
    InfeasibleQuotaError(std::size_t cluster, std::size_t size, std::size_t quota)
        : std::runtime_error("cluster " + std::to_string(cluster) + " has " + std::to_string(size) +
                             " member(s), fewer than the required " + std::to_string(quota)),
          cluster_(cluster) {}

    std::size_t cluster() const noexcept { return cluster_; }

private:
    std::size_t cluster_;
};

}  // namespace gom
