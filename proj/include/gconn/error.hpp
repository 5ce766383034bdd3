#pragma once

#include <stdexcept>
#include <string>

namespace gconn {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input: loops, out-of-range endpoints, bad graph6, bad parameters.
class InputError : public Error {
public:
    explicit InputError(const std::string& what) : Error(what) {}
};

// Work refused because it exceeds an enumeration or search budget.
// Budgets are explicit parameters; we refuse instead of truncating silently.
class BudgetError : public Error {
public:
    explicit BudgetError(const std::string& what) : Error(what) {}
};

} // namespace gconn
