#include "addcount/real.hpp"

#include <cmath>

namespace addcount {

PrecisionScope::PrecisionScope(unsigned bits) : saved_digits10_(Real::default_precision()) {
  // digits10 -> bits conversion in Boost rounds up; one spare digit keeps
  // the mantissa at or above the requested width.
  const auto digits10 = static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
  Real::default_precision(digits10);
  Real probe = 1;
  actual_bits_ = precision_bits(probe);
  unit_ = Real(1);
  mpfr_mul_2si(unit_.backend().data(), unit_.backend().data(), 1 - static_cast<long>(actual_bits_), MPFR_RNDN);
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_digits10_); }

unsigned precision_bits(const Real& x) {
  return static_cast<unsigned>(mpfr_get_prec(x.backend().data()));
}

Real const_pi() {
  Real out = 0;
  mpfr_const_pi(out.backend().data(), MPFR_RNDN);
  return out;
}

Real to_real(const BigInt& v) {
  Real out = 0;
  mpfr_set_z(out.backend().data(), v.get_mpz_t(), MPFR_RNDN);
  return out;
}

Real to_real(std::int64_t v) {
  Real out = 0;
  mpfr_set_si(out.backend().data(), static_cast<long>(v), MPFR_RNDN);
  return out;
}

std::string to_decimal(const Real& x) {
  // Enough decimal digits to round-trip the binary mantissa.
  const auto digits = static_cast<std::streamsize>(std::ceil(precision_bits(x) * 0.30102999566398120)) + 2;
  return x.str(digits, std::ios_base::scientific);
}

}  // namespace addcount
