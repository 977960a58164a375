#pragma once

#include <stdexcept>
#include <string>

namespace selfsim {

// Base for every error this library raises on purpose.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed .ssg/.msp input; carries a 1-based position when known.
struct ParseError : Error {
    int line = 0;
    int column = 0;
    ParseError(const std::string& what, int line_ = 0, int column_ = 0)
        : Error(line_ > 0 ? std::to_string(line_) + ":" + std::to_string(column_) + ": " + what
                          : what),
          line(line_), column(column_) {}
};

// Structurally well-formed input that violates a documented precondition.
struct ValidationError : Error {
    explicit ValidationError(const std::string& what) : Error(what) {}
};

// The nucleus iteration outgrew the configured bound; inconclusive, the
// group may simply be non-contracting.
struct CapExceededError : Error {
    int iterations = 0;
    int state_count = 0;
    CapExceededError(int iterations_, int state_count_)
        : Error("state cap exceeded after " + std::to_string(iterations_) +
                " iteration(s) at " + std::to_string(state_count_) + " states"),
          iterations(iterations_), state_count(state_count_) {}
};

// A verdict could not be completed (currently only: unfactored cofactor).
struct InconclusiveError : Error {
    std::string cofactor;
    InconclusiveError(const std::string& what, std::string cofactor_)
        : Error(what), cofactor(std::move(cofactor_)) {}
};

// A checked internal invariant failed; always a bug, never a user error.
struct InternalError : Error {
    explicit InternalError(const std::string& what) : Error(what) {}
};

}  // namespace selfsim
