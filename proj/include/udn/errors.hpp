#pragma once

#include <stdexcept>
#include <string>

namespace udn {

// Raised when a config file or model parameter violates a structural
// constraint. The CLI maps this to exit code 1.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// Raised when a numerical routine cannot reach its accuracy target or a
// result falls outside its provable range. The CLI maps this to exit code 2.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// A requested moment or integral does not exist (infinite value).
class DivergenceError : public NumericError {
public:
    explicit DivergenceError(const std::string& what) : NumericError(what) {}
};

// A parameter combination the analysis intentionally does not cover.
class UnsupportedCaseError : public std::runtime_error {
public:
    explicit UnsupportedCaseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace udn
