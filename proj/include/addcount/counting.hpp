#pragma once

// Exact counting of additive tuples x0 = x1 + ... + xk over subsets of Z_p.
//
// All counts are arbitrary-precision (GMP). sigma(x; A1..Ak), the number of
// k-tuples in A1 x ... x Ak summing to x, is the k-fold cyclic convolution of
// the indicator functions; s(A0, A1..Ak) sums it over A0.

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <vector>

#include "addcount/zp.hpp"

namespace addcount {

using BigInt = mpz_class;

/// Length-p vector of nonnegative big integers, one entry per residue.
class CountVector {
 public:
  CountVector() = default;
  explicit CountVector(std::size_t p) : entries_(p) {}

  static CountVector indicator(const PrimeContext& ctx, Subset A);
  static CountVector delta(const PrimeContext& ctx, int x);

  std::size_t size() const { return entries_.size(); }
  const BigInt& operator[](std::size_t x) const { return entries_[x]; }
  BigInt& operator[](std::size_t x) { return entries_[x]; }
  std::span<const BigInt> entries() const { return entries_; }

  BigInt total() const;

  friend bool operator==(const CountVector& l, const CountVector& r) { return l.entries_ == r.entries_; }

 private:
  std::vector<BigInt> entries_;
};

// result[x] = sum_y u[y] * v[x - y mod p]. Throws std::invalid_argument on a
// length mismatch.
CountVector cyclic_convolve(const CountVector& u, const CountVector& v);

// u * 1_A, done with additions only.
CountVector convolve_with_set(const CountVector& u, Subset A);

// Entry x counts k-tuples of A1 x ... x Ak summing to x. Throws on an empty list.
CountVector sigma_vector(const PrimeContext& ctx, std::span<const Subset> sets);

// sigma_vector of A repeated k times, by binary exponentiation over cyclic
// convolution. Throws std::invalid_argument for k < 1.
CountVector power_sigma(const PrimeContext& ctx, Subset A, const BigInt& k);

// sum_{x in A} sigma[x + shift].
BigInt sum_over(const CountVector& sigma, Subset A, std::int64_t shift = 0);

// s(A0, A1, ..., Ak) for rest = (A1, ..., Ak), k >= 1.
BigInt s_count(const PrimeContext& ctx, Subset A0, std::span<const Subset> rest);

// Same quantity through level sets: sum_{r >= 1} |A0 n N_r(A1..Ak)|.
BigInt s_count_via_levels(const CountVector& sigma, Subset A0);

// s_k(A) = s(A, A, ..., A) with k summands.
BigInt s_k_count(const PrimeContext& ctx, Subset A, const BigInt& k);

// sigma vector of A+t obtained from that of A: entry x moves to x + k*t.
CountVector shift(const CountVector& v, std::int64_t by);

}  // namespace addcount
