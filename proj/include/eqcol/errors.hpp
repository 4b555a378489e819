#pragma once

#include <stdexcept>
#include <string>

namespace eqcol {

// Thrown for malformed user input: bad DIMACS, out-of-range vertex ids,
// infeasible parameter combinations the caller could have checked.
// CLI maps this to exit code 2.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace eqcol
