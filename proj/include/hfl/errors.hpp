#pragma once
// errors.hpp

#include <stdexcept>
#include <string>

namespace hfl {

// Bad input: malformed files, out-of-range arguments, invalid structures.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Something computed internally broke an algebraic identity.
struct InvariantError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace hfl
