#pragma once

#include <stdexcept>
#include <string>

namespace chordscope {

/// Malformed or inconsistent value (bad scale spec, bad config, empty input).
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Argument outside an operation's mathematical domain.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed external data (WAV bytes, note names, ...).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace chordscope
