#pragma once

#include <stdexcept>
#include <string>

namespace arith {

// Requested table or argument exceeds what the engine is configured to hold.
class capacity_error : public std::length_error {
public:
    using std::length_error::length_error;
};

// Raised by checkpoint loading when the stored hash or scan identity does
// not match.
class integrity_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace arith
