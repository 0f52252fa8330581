#pragma once

// Exhaustive minimisation of s_k(a) and s(a0, ..., ak), and exact-count
// verification of the interval-extremality, k != 1 and k = 1 (mod p)
// structure theorems and the orbit-count corollary.
//
// Verdicts come from exact BigInt comparisons only. Fourier data is used to
// predict (optimal translates, alternation points), never to decide.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "addcount/counting.hpp"
#include "addcount/zp.hpp"

namespace addcount {

enum class SearchMethod { ExhaustiveOrbits, ExhaustiveRaw };
std::string to_string(SearchMethod m);

struct SearchReport {
  std::string kind;        // "sk" or "s"
  int p = 0;
  std::vector<int> sizes;  // (a) for s_k, (a0, ..., ak) for s
  BigInt k;
  BigInt min_value;
  // s_k: canonical affine reps of the orbits containing a minimiser.
  // s: the minimising configurations' A0 (interval mode: [a0]+t).
  std::vector<Subset> extremal_orbits;
  // s_k with k != 1 (mod p): minimisers up to dilation, each given by its
  // dilation-canonical form. For k = 1 (mod p) the orbits are the classes.
  std::vector<Subset> extremal_classes;
  std::uint64_t extremal_set_count = 0;  // number of minimising a-sets (s_k only)
  SearchMethod method = SearchMethod::ExhaustiveOrbits;
  double elapsed_ms = 0;
};

inline constexpr std::uint64_t kMaxConfigurations = 10'000'000;

// Runs fn(i) for i in [0, n) on up to `threads` workers (0 = hardware
// concurrency). fn must only write to its own slot; results are therefore
// independent of scheduling.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

struct SearchOptions {
  SearchMethod method = SearchMethod::ExhaustiveOrbits;
  unsigned threads = 1;
};

// Exact minimum of s_k over all a-subsets. Requires k >= 2 and C(p, a) within
// the catalog guard.
SearchReport minimize_sk(const PrimeContext& ctx, int a, const BigInt& k, const SearchOptions& opts = {});

enum class GeneralMode { Full, IntervalOnly };

// sizes = (a0, a1, ..., ak), k >= 1. Full mode enumerates every
// configuration (guarded by kMaxConfigurations); interval mode scans
// s([a0]+t, [a1], ..., [ak]) over t.
SearchReport minimize_s_general(const PrimeContext& ctx, std::span<const int> sizes, GeneralMode mode);

// Calls fn(rest) for every (A1, ..., Ak) with |Ai| = sizes[i].
void for_each_configuration(const PrimeContext& ctx, std::span<const int> sizes,
                            const std::function<void(std::span<const Subset>)>& fn);

enum class PointStatus { Holds, Fails, BelowThreshold, NotApplicable };
std::string to_string(PointStatus s);

struct VerdictPoint {
  std::string label;
  PointStatus status = PointStatus::Holds;
  std::string detail;
};

struct TheoremVerdict {
  std::string theorem;
  std::string range;
  std::vector<VerdictPoint> points;
  std::optional<BigInt> threshold;  // least k from which the conclusion held throughout

  bool holds() const;
};

// Brute-force minimum = interval-construction minimum for one size vector;
// when all sizes are equal and k != 1 (mod p), also checks that the common
// set [a] - t (k-1)^{-1} attains it.
TheoremVerdict verify_thm_interval_extremal(const PrimeContext& ctx, std::span<const int> sizes);
// Every size vector in [0, p]^{k+1}.
TheoremVerdict verify_thm_interval_extremal_all(const PrimeContext& ctx, int k);

// Outcome of the three extremality conditions over every configuration of a
// size vector (all sizes in [1, p-1]).
struct ConditionAgreement {
  std::uint64_t configurations = 0;
  std::uint64_t minimisers = 0;
  std::uint64_t condition_true = 0;
  std::uint64_t mismatches = 0;  // conditions disagree with attaining the minimum
  BigInt minimum;
};
ConditionAgreement check_extremality_agreement(const PrimeContext& ctx, std::span<const int> sizes);

/// Per-k s_k values of every orbit representative, advanced by one
/// convolution with 1_A per step.
class IncrementalScanner {
 public:
  IncrementalScanner(const PrimeContext& ctx, int a, unsigned threads = 1);

  const OrbitCatalog& catalog() const { return catalog_; }
  const BigInt& k() const { return k_; }
  void advance();  // k -> k + 1
  void advance_to(const BigInt& k);

  // s_k(rep_i + t) for every rep i and translate t.
  std::vector<std::vector<BigInt>> translate_values() const;
  // s_k(rep_i) for every rep.
  std::vector<BigInt> orbit_values() const;
  // Minimum over every a-set, with minimising classes (see SearchReport).
  SearchReport minimum() const;

 private:
  const PrimeContext& ctx_;
  OrbitCatalog catalog_;
  unsigned threads_;
  BigInt k_;
  std::vector<CountVector> sigma_;
};

// For k != 1 (mod p) in [k_min, k_max], checks that the minimisers are exactly
// the dilations of I+t, t in optimal_t. Mismatches before the least k from
// which every tested k agrees are below-threshold; a mismatch at k_max fails.
TheoremVerdict verify_thm_knot1(const PrimeContext& ctx, int a, const BigInt& k_min, const BigInt& k_max,
                                unsigned threads = 1);

// The k = 1 (mod p) structure over k = sp+1, s in [s_min, s_max]: parts 1 and 2 per s,
// the 2b/2c alternation, and the sign predicted at each t-good s.
TheoremVerdict verify_thm_k1(const PrimeContext& ctx, int a, std::int64_t s_min, std::int64_t s_max,
                             unsigned threads = 1);

// Orbit counts for every prime 3 <= p <= p_max and every a in [0, p].
TheoremVerdict verify_cor7(int p_max);

enum class ScanMode { KNot1, K1Even, K1Odd };
std::string to_string(ScanMode m);
ScanMode parse_scan_mode(const std::string& s);

struct ScanReport {
  int p = 0;
  int a = 0;
  ScanMode mode = ScanMode::KNot1;
  std::string conclusion;
  BigInt k_max;                       // last k tested
  std::optional<BigInt> k_star;       // least family k from which every tested k held
  bool window_complete = false;       // every family k in [k*, k* + 4p] was tested
  std::vector<BigInt> tested;
  std::vector<BigInt> violations;
  struct Boundary {
    BigInt k;
    bool holds = false;
    BigInt min_value;
    BigInt expected_value;  // value of the conclusion's set(s)
  };
  std::vector<Boundary> boundary;
};

// Scans the family from k = 2 through k_limit, extending (up to 4 * k_limit)
// until the window [k*, k* + 4p] has been fully tested.
ScanReport scan_k0(const PrimeContext& ctx, int a, ScanMode mode, const BigInt& k_limit = 500,
                   unsigned threads = 1);

}  // namespace addcount
