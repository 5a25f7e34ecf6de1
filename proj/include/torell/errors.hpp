#pragma once
#include <stdexcept>
#include <string>

namespace torell {

// Input could not be parsed; `pos` is the offset of the offending character.
struct ParseError : std::runtime_error {
    std::size_t pos;
    ParseError(const std::string& msg, std::size_t at = 0)
        : std::runtime_error(msg), pos(at) {}
};

// A mathematical precondition was violated (singular curve, zero character,
// pole order over the cap, budget exhausted, ...).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace torell
