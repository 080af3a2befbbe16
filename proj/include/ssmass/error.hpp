#pragma once

#include <stdexcept>
#include <string>

namespace ssmass {

// Input data violates a declared invariant (CLI exit code 1).
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// A hypothesis gating an operation does not hold for the given input (CLI exit code 2).
struct GateError : std::runtime_error {
    explicit GateError(const std::string& msg) : std::runtime_error(msg) {}
};

// An internal identity that must hold by construction failed, e.g. a component
// count came out non-integral (CLI exit code 3).
struct InvariantError : std::runtime_error {
    explicit InvariantError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace ssmass
