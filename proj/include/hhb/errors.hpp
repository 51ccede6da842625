#pragma once

#include <stdexcept>
#include <string>

namespace hhb {

/// Malformed or inconsistent input data (bad JSON, weight sums, indices, ...).
class InputError : public std::runtime_error {
public:
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A size cap or feasibility limit was exceeded.
class ResourceError : public std::runtime_error {
public:
  explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A claimed symmetry fails to preserve the measure (or quotient rows disagree).
class SymmetryError : public std::runtime_error {
public:
  explicit SymmetryError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace hhb
