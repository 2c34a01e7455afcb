#pragma once

#include <stdexcept>
#include <string>

namespace npp {

/// Malformed or inconsistent input: parse errors, dimension mismatches,
/// out-of-range arguments. CLI maps these to exit code 2.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// A gadget instance failed its interval range-check during construction.
/// The construction never emits an unsound system; it throws this instead.
class ConstructionError : public std::runtime_error {
public:
    explicit ConstructionError(const std::string& what) : std::runtime_error(what) {}
};

/// A rational-map denominator vanished at an evaluation point.
class EvaluationError : public std::runtime_error {
public:
    explicit EvaluationError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace npp
