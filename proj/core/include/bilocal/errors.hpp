#pragma once

#include <stdexcept>
#include <string>

namespace bilocal {

// User-facing configuration problem (bad flag, malformed config file,
// parameter out of range). CLI maps this to exit code 1.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem or serialization failure. CLI maps this to exit code 2.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// A library invariant was breached (non-Hermitian state, probability table
// that fails normalization, ...). Always a bug or corrupted input, never a
// recoverable condition. CLI maps this to exit code 3.
class InvariantError : public std::runtime_error {
public:
    explicit InvariantError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace bilocal
