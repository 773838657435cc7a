#pragma once

#include <stdexcept>

namespace tsr {

// Bad user-facing configuration (unknown strategy name, invalid plan, ...).
// The CLI maps this to exit code 1.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad or inconsistent data (missing file, malformed CSV row, empty class, ...).
// The CLI maps this to exit code 2.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace tsr
