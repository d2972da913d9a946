#pragma once

#include <stdexcept>
#include <string>

namespace singan {

// Base for everything this library throws on purpose.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A truncated series ran out of known coefficients (window shrank to nothing).
struct PrecisionExhausted : Error {
    explicit PrecisionExhausted(const std::string& msg) : Error(msg) {}
};

// Retrying with larger truncation windows hit the configured cap.
struct BudgetExhausted : Error {
    explicit BudgetExhausted(const std::string& msg) : Error(msg) {}
};

// An exact orbit stepped onto a genuine pole / 0-by-0 situation.
struct DegenerateOrbit : Error {
    long step;
    DegenerateOrbit(const std::string& msg, long at) : Error(msg), step(at) {}
};

// Forward rule is not degree 1 in y, so no rational inverse exists.
struct NotMobius : Error {
    explicit NotMobius(const std::string& msg) : Error(msg) {}
};

// Map (or requested operation on it) falls outside what the analyzer handles.
struct UnsupportedMap : Error {
    explicit UnsupportedMap(const std::string& msg) : Error(msg) {}
};

// Characteristic polynomial whose dominant behavior the real-root machinery
// cannot certify (complex spectrum dominating).
struct UnsupportedSpectrum : Error {
    explicit UnsupportedSpectrum(const std::string& msg) : Error(msg) {}
};

// Bad argument at an API boundary (parameter sequence not extendable, etc).
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// Mapfile syntax / semantic error with source position.
struct ParseError : Error {
    int line, col;
    std::string snippet;
    ParseError(const std::string& msg, int l, int c, std::string snip = {})
        : Error(msg + " (line " + std::to_string(l) + ", col " + std::to_string(c) + ")"),
          line(l), col(c), snippet(std::move(snip)) {}
};

}  // namespace singan
