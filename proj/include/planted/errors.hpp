#pragma once

#include <stdexcept>
#include <string>

namespace planted {

// Base for everything thrown by this library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid argument or malformed input (CLI exit code 2).
struct usage_error : error {
    using error::error;
};

// Malformed file content; message carries the 1-based line number.
struct parse_error : usage_error {
    using usage_error::usage_error;
};

// Filesystem failure (unreadable/unwritable path).
struct io_error : usage_error {
    using usage_error::usage_error;
};

// Exhaustive computation would exceed its work budget (CLI exit code 3).
struct budget_error : error {
    using error::error;
};

// Parameters outside the regime where the quantity is defined (CLI exit code 3).
struct regime_error : error {
    using error::error;
};

} // namespace planted
