#pragma once

#include <stdexcept>

namespace dnls {

// A computation refused because its enumeration or grid would be too large.
struct guard_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A checked property failed (distinct from bad input).
struct property_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace dnls
