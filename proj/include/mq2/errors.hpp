#pragma once

#include <stdexcept>

namespace mq2 {

// Malformed or out-of-domain arguments (CLI maps these to exit code 2).
struct input_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A stated mathematical hypothesis fails for the given input (exit code 3).
struct hypothesis_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Internal consistency failure; indicates a bug, not bad input (exit code 4).
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace mq2
