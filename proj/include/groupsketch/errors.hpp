#pragma once

#include <stdexcept>

namespace groupsketch {

// Thrown when the type space is too large to enumerate exactly.
struct EnumerationCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when a joint law is structurally malformed, e.g. an outcome with
// positive probability under H1 but zero probability under H0.
struct DistributionInconsistency : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace groupsketch
