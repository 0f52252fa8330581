#pragma once

// Independent reference implementations for tests: plain loops over tuples,
// sorted-vector orbits, long-double DFT. Nothing here calls the library.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using Set = std::vector<int>;  // sorted residues

inline Set normalise(Set s, int p) {
  for (int& x : s) x = ((x % p) + p) % p;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

// #{(x1..xk) in A1 x ... x Ak : x1 + ... + xk = x (mod p)} for each x.
inline std::vector<std::uint64_t> sigma(int p, const std::vector<Set>& sets) {
  std::vector<std::uint64_t> out(static_cast<std::size_t>(p), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int sum) {
    if (i == sets.size()) {
      ++out[static_cast<std::size_t>(sum)];
      return;
    }
    for (int x : sets[i]) rec(i + 1, (sum + x) % p);
  };
  rec(0, 0);
  return out;
}

// s(A0, A1, ..., Ak) by enumerating every k-tuple.
inline std::uint64_t s_count(int p, const Set& A0, const std::vector<Set>& rest) {
  const auto sg = sigma(p, rest);
  std::uint64_t total = 0;
  for (int x : A0) total += sg[static_cast<std::size_t>(x)];
  return total;
}

inline std::uint64_t s_k(int p, const Set& A, int k) {
  return s_count(p, A, std::vector<Set>(static_cast<std::size_t>(k), A));
}

inline void for_each_subset(int p, int a, const std::function<void(const Set&)>& fn) {
  Set cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == a) {
      fn(cur);
      return;
    }
    for (int x = start; x < p; ++x) {
      cur.push_back(x);
      rec(x + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

inline Set affine_image(int p, const Set& A, int xi, int eta) {
  Set out;
  for (int x : A) out.push_back(static_cast<int>((static_cast<std::int64_t>(xi) * x + eta) % p));
  std::sort(out.begin(), out.end());
  return out;
}

// Lexicographically least sorted image (a different order from the
// library's word order on purpose).
inline Set orbit_key(int p, const Set& A) {
  Set best = A;
  for (int xi = 1; xi < p; ++xi) {
    for (int eta = 0; eta < p; ++eta) best = std::min(best, affine_image(p, A, xi, eta));
  }
  return best;
}

inline std::size_t orbit_count(int p, int a) {
  std::set<Set> keys;
  for_each_subset(p, a, [&](const Set& s) { keys.insert(orbit_key(p, s)); });
  return keys.size();
}

inline bool equivalent(int p, const Set& A, const Set& B) { return orbit_key(p, A) == orbit_key(p, B); }

inline std::complex<long double> dft(int p, const Set& A, int gamma) {
  std::complex<long double> sum = 0;
  for (int x : A) {
    const long double angle = -2.0L * std::numbers::pi_v<long double> * ((static_cast<long>(x) * gamma) % p) / p;
    sum += std::polar(1.0L, angle);
  }
  return sum;
}

// Minimum of s over every configuration of the given sizes.
inline std::uint64_t min_s(int p, const std::vector<int>& sizes) {
  std::vector<std::vector<Set>> pools(sizes.size());
  for (std::size_t i = 0; i < sizes.size(); ++i) for_each_subset(p, sizes[i], [&](const Set& s) { pools[i].push_back(s); });
  std::uint64_t best = UINT64_MAX;
  std::vector<Set> rest(sizes.size() - 1);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == rest.size()) {
      const auto sg = sigma(p, rest);
      for (const auto& A0 : pools[0]) {
        std::uint64_t v = 0;
        for (int x : A0) v += sg[static_cast<std::size_t>(x)];
        best = std::min(best, v);
      }
      return;
    }
    for (const auto& s : pools[i + 1]) {
      rest[i] = s;
      rec(i + 1);
    }
  };
  rec(0);
  return best;
}

inline Set random_set(std::mt19937_64& rng, int p, int a) {
  Set all(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i) all[static_cast<std::size_t>(i)] = i;
  std::shuffle(all.begin(), all.end(), rng);
  Set out(all.begin(), all.begin() + a);
  std::sort(out.begin(), out.end());
  return out;
}

inline int uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

}  // namespace oracle
