#pragma once

#include <stdexcept>
#include <string>

namespace qmds {

/// Invalid user-supplied parameters or operation preconditions.
struct ParamError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Work refused because it would exceed a configured budget.
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed serialized input.
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A guarantee the mathematics promises failed to hold; indicates a bug.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace qmds
