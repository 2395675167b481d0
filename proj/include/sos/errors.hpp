#pragma once

#include <stdexcept>

namespace sos {

// Invalid numeric input: nonpositive or non-finite theta, NaN field values,
// negative arguments to maps that live on [0, inf), d below the analysable range.
struct domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A caller broke an API precondition: pattern inconsistent with the tree order,
// an operator invoked outside m = 2, a malformed configuration vector.
struct contract_error : std::logic_error {
    using std::logic_error::logic_error;
};

// The requested quantity does not exist in this parameter regime
// (e.g. critical pair asked for where the discriminant is negative).
struct regime_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A formula degenerates at this input (h* = 0 makes the critical field
// bounds blow up).
struct degenerate_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An enumeration or sweep exceeds its configured size budget.
struct size_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A root scan came back empty although the map is bounded and continuous,
// so a fixed point must exist; the scan window needs widening.
struct scan_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Output path not writable, malformed input file, and similar.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace sos
