#pragma once

#include <stdexcept>
#include <string>

namespace gm2 {

// Mismatched ring / variable set / cap between operands.
struct structural_error : std::runtime_error {
  explicit structural_error(const std::string& what) : std::runtime_error(what) {}
};

// Inverting a non-unit (constant term not invertible, matrix not 1 + higher, ...).
struct unit_error : std::runtime_error {
  explicit unit_error(const std::string& what) : std::runtime_error(what) {}
};

// exact_divide called on a non-multiple.
struct divisibility_error : std::runtime_error {
  explicit divisibility_error(const std::string& what) : std::runtime_error(what) {}
};

// Input outside the mathematical domain of an operation (non-member element,
// wrong characteristic, inconsistent linear system, ...).
struct domain_error : std::runtime_error {
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// Out-of-range argument (degree, index, prime).
struct range_error : std::runtime_error {
  explicit range_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gm2
