#pragma once
#include <stdexcept>
#include <string>

namespace qcorner {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Caller broke a contract: mismatched field orders, mismatched ambient
// dimensions, non-bijective relabeling maps, and the like.
struct UsageError : Error {
    using Error::Error;
};

struct DivisionByZeroError : Error {
    DivisionByZeroError() : Error("division by zero in cyclotomic field") {}
};

// A computation was refused because a degree cap or coordinate-space size
// limit would be exceeded; raise the cap explicitly to proceed.
struct DegreeCapError : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

}  // namespace qcorner
