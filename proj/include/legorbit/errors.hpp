#pragma once

#include <stdexcept>
#include <string>

namespace legorbit {

// Raised when an operation's hypotheses are not met for the given input
// (e.g. asking for index structure when d is not of a supported shape).
struct unsupported_configuration : std::domain_error {
    explicit unsupported_configuration(const std::string& what)
        : std::domain_error(what) {}
};

// Raised when an input is structurally valid but exceeds a hard size cap.
struct capacity_error : std::length_error {
    explicit capacity_error(const std::string& what)
        : std::length_error(what) {}
};

}  // namespace legorbit
