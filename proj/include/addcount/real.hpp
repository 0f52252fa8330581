#pragma once

// Working-precision reals on top of MPFR.

#include <boost/multiprecision/mpfr.hpp>

#include <string>

#include "addcount/counting.hpp"

namespace addcount {

using Real = boost::multiprecision::mpfr_float;

/// Sets the calling thread's default MPFR precision (in bits) for the
/// lifetime of the scope. Reals created inside the scope carry at least
/// `bits` bits of mantissa.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

  // Actual mantissa bits of Reals created in this scope.
  unsigned bits() const { return actual_bits_; }
  // 2^(1 - bits): bound on the relative error of one correctly rounded op.
  const Real& unit() const { return unit_; }

 private:
  unsigned saved_digits10_;
  unsigned actual_bits_;
  Real unit_;
};

unsigned precision_bits(const Real& x);

Real const_pi();
Real to_real(const BigInt& v);
Real to_real(std::int64_t v);

// Decimal string carrying the full mantissa.
std::string to_decimal(const Real& x);

}  // namespace addcount
