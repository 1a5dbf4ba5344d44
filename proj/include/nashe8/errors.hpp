// Exception types shared by every layer.
#pragma once

#include <stdexcept>
#include <string>

namespace nashe8 {

struct DivisionByZero : std::domain_error {
  DivisionByZero() : std::domain_error("division by zero") {}
};

// A truncated series ran out of known terms before a nonzero one appeared.
struct InsufficientPrecision : std::runtime_error {
  explicit InsufficientPrecision(const std::string& w) : std::runtime_error("insufficient precision: " + w) {}
};

// An internal identity that must hold exactly did not (e.g. the syzygy).
struct ConsistencyError : std::logic_error {
  explicit ConsistencyError(const std::string& w) : std::logic_error("consistency: " + w) {}
};

}  // namespace nashe8
