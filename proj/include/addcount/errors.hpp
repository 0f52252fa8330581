#pragma once

#include <stdexcept>
#include <string>

namespace addcount {

// Raised when an enumeration would exceed its desk-scale guard
// (binomial counts, configuration counts, threshold profile length).
class SizeLimitError : public std::runtime_error {
 public:
  explicit SizeLimitError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when high-precision evaluation cannot separate the quantities it
// was asked to compare, even at the maximum allowed working precision.
class PrecisionError : public std::runtime_error {
 public:
  explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace addcount
