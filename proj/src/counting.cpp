#include "addcount/counting.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>

namespace addcount {

CountVector CountVector::indicator(const PrimeContext& ctx, Subset A) {
  CountVector v(static_cast<std::size_t>(ctx.p()));
  for (int x : A.residues()) v[static_cast<std::size_t>(x)] = 1;
  return v;
}

CountVector CountVector::delta(const PrimeContext& ctx, int x) {
  CountVector v(static_cast<std::size_t>(ctx.p()));
  v[static_cast<std::size_t>(ctx.reduce(x))] = 1;
  return v;
}

BigInt CountVector::total() const {
  BigInt sum = 0;
  for (const auto& e : entries_) sum += e;
  return sum;
}

CountVector cyclic_convolve(const CountVector& u, const CountVector& v) {
  if (u.size() != v.size()) throw std::invalid_argument("cyclic_convolve: length mismatch");
  const std::size_t p = u.size();
  CountVector out(p);
  for (std::size_t y = 0; y < p; ++y) {
    if (sgn(u[y]) == 0) continue;
    for (std::size_t z = 0; z < p; ++z) {
      if (sgn(v[z]) == 0) continue;
      std::size_t x = y + z;
      if (x >= p) x -= p;
      mpz_addmul(out[x].get_mpz_t(), u[y].get_mpz_t(), v[z].get_mpz_t());
    }
  }
  return out;
}

CountVector convolve_with_set(const CountVector& u, Subset A) {
  const std::size_t p = u.size();
  CountVector out(p);
  const auto members = A.residues();
  for (std::size_t y = 0; y < p; ++y) {
    if (sgn(u[y]) == 0) continue;
    for (int a : members) {
      std::size_t x = y + static_cast<std::size_t>(a);
      if (x >= p) x -= p;
      out[x] += u[y];
    }
  }
  return out;
}

CountVector sigma_vector(const PrimeContext& ctx, std::span<const Subset> sets) {
  if (sets.empty()) throw std::invalid_argument("sigma_vector needs at least one set");
  CountVector acc = CountVector::indicator(ctx, sets.front());
  for (std::size_t i = 1; i < sets.size(); ++i) acc = convolve_with_set(acc, sets[i]);
  return acc;
}

CountVector power_sigma(const PrimeContext& ctx, Subset A, const BigInt& k) {
  if (k < 1) throw std::invalid_argument("power_sigma needs k >= 1");
  CountVector acc = CountVector::indicator(ctx, A);
  const auto bits = mpz_sizeinbase(k.get_mpz_t(), 2);
  for (auto i = static_cast<std::ptrdiff_t>(bits) - 2; i >= 0; --i) {
    acc = cyclic_convolve(acc, acc);
    if (mpz_tstbit(k.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) acc = convolve_with_set(acc, A);
  }
  return acc;
}

BigInt sum_over(const CountVector& sigma, Subset A, std::int64_t shift) {
  const auto p = static_cast<std::int64_t>(sigma.size());
  BigInt sum = 0;
  for (int x : A.residues()) {
    std::int64_t i = (x + shift) % p;
    if (i < 0) i += p;
    sum += sigma[static_cast<std::size_t>(i)];
  }
  return sum;
}

BigInt s_count_via_levels(const CountVector& sigma, Subset A0) {
  // Distinct positive values v_1 < v_2 < ...; on (v_{j-1}, v_j] the level
  // set N_r is {x : sigma(x) >= v_j}.
  std::map<BigInt, int> hits_at;
  for (std::size_t x = 0; x < sigma.size(); ++x) {
    if (sgn(sigma[x]) > 0) hits_at[sigma[x]] += A0.contains(static_cast<int>(x)) ? 1 : 0;
  }
  BigInt total = 0;
  BigInt prev = 0;
  int in_level = 0;
  for (const auto& [value, hits] : hits_at) in_level += hits;
  for (const auto& [value, hits] : hits_at) {
    total += BigInt(value - prev) * in_level;
    in_level -= hits;
    prev = value;
  }
  return total;
}

BigInt s_count(const PrimeContext& ctx, Subset A0, std::span<const Subset> rest) {
  const CountVector sigma = sigma_vector(ctx, rest);
  BigInt direct = sum_over(sigma, A0);
  assert(direct == s_count_via_levels(sigma, A0));
  return direct;
}

BigInt s_k_count(const PrimeContext& ctx, Subset A, const BigInt& k) {
  return sum_over(power_sigma(ctx, A, k), A);
}

CountVector shift(const CountVector& v, std::int64_t by) {
  const auto p = static_cast<std::int64_t>(v.size());
  CountVector out(v.size());
  for (std::int64_t x = 0; x < p; ++x) {
    std::int64_t y = (x + by) % p;
    if (y < 0) y += p;
    out[static_cast<std::size_t>(y)] = v[static_cast<std::size_t>(x)];
  }
  return out;
}

}  // namespace addcount
