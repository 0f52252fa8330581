#pragma once

// Residue arithmetic on Z_p, the affine group x -> xi*x + eta, subsets of Z_p
// as 64-bit membership words, and affine-orbit canonicalization.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace addcount {

using Word = std::uint64_t;

bool is_prime(std::int64_t n);

// Binomial coefficient C(n, k) for 0 <= n <= 64; saturates at UINT64_MAX.
std::uint64_t binomial(int n, int k);

/// The odd prime p together with its table of multiplicative inverses.
/// Supported range is 3 <= p <= 61 (p must fit a 64-bit membership word).
class PrimeContext {
 public:
  explicit PrimeContext(int p);

  int p() const { return p_; }
  Word full_mask() const { return mask_; }

  int reduce(std::int64_t x) const {
    const std::int64_t r = x % p_;
    return static_cast<int>(r < 0 ? r + p_ : r);
  }
  int add(int x, int y) const { return reduce(std::int64_t{x} + y); }
  int mul(int x, int y) const { return reduce(std::int64_t{x} * y); }
  int neg(int x) const { return reduce(-std::int64_t{x}); }

  // Inverse of a nonzero residue; throws std::invalid_argument on 0 mod p.
  int inverse(std::int64_t x) const;

 private:
  int p_;
  Word mask_;
  std::vector<int> inv_;
};

/// An a-element subset of Z_p stored as a membership word (bit x set iff
/// x is a member). Bits at positions >= p are always zero; the factories
/// below enforce this against a PrimeContext.
class Subset {
 public:
  constexpr Subset() = default;

  static Subset from_word(Word w);

  Word word() const { return members_; }
  int size() const { return size_; }
  bool empty() const { return size_ == 0; }
  bool contains(int x) const { return x >= 0 && x < 64 && ((members_ >> x) & 1u) != 0; }

  // Sorted list of members.
  std::vector<int> residues() const;

  friend bool operator==(const Subset&, const Subset&) = default;
  friend std::strong_ordering operator<=>(const Subset& l, const Subset& r) {
    return l.members_ <=> r.members_;
  }

 private:
  Word members_ = 0;
  int size_ = 0;
};

// Values are reduced mod p; a value repeated after reduction is rejected
// with std::invalid_argument.
Subset make_subset(const PrimeContext& ctx, std::span<const std::int64_t> values);
Subset make_subset(const PrimeContext& ctx, std::initializer_list<std::int64_t> values);
// Throws std::invalid_argument if w has bits at positions >= p.
Subset subset_from_word(const PrimeContext& ctx, Word w);

// {start, start+1, ..., start+length-1} mod p.
Subset interval(const PrimeContext& ctx, std::int64_t start, int length);
// [a-1] u {a} = {0, ..., a-2, a}.
Subset punctured_interval(const PrimeContext& ctx, int a);
Subset complement(const PrimeContext& ctx, Subset A);

bool is_interval(const PrimeContext& ctx, Subset A);
// All d in [1, p-1] such that A is an arithmetic progression with difference d.
std::vector<int> ap_differences(const PrimeContext& ctx, Subset A);

/// x -> xi*x + eta with xi != 0 mod p.
struct AffineMap {
  int xi = 1;
  int eta = 0;

  static AffineMap identity() { return {}; }
  friend bool operator==(const AffineMap&, const AffineMap&) = default;
};

int apply(const PrimeContext& ctx, const AffineMap& m, int x);
// (f o g)(x) = f(g(x)).
AffineMap compose(const PrimeContext& ctx, const AffineMap& f, const AffineMap& g);
AffineMap inverse(const PrimeContext& ctx, const AffineMap& m);

Subset translate(const PrimeContext& ctx, Subset A, std::int64_t t);
Subset dilate(const PrimeContext& ctx, Subset A, std::int64_t xi);
// {xi*x + eta : x in A}; rejects xi = 0 mod p with std::invalid_argument.
Subset apply_affine(const PrimeContext& ctx, const AffineMap& m, Subset A);

// Smallest membership word among all p(p-1) affine images of A.
Subset canonical_form(const PrimeContext& ctx, Subset A);
// Smallest membership word among the p-1 dilations xi*A.
Subset dilation_canonical_form(const PrimeContext& ctx, Subset A);
// Smallest membership word among the p translates A+t, and the t attaining it.
std::pair<Subset, int> translation_canonical_form(const PrimeContext& ctx, Subset A);

/// Canonical representatives of the a-subsets of Z_p under the affine group.
struct OrbitCatalog {
  int p = 0;
  int a = 0;
  std::vector<Subset> reps;                 // increasing membership words
  std::vector<std::uint64_t> orbit_sizes;   // parallel to reps

  std::size_t size() const { return reps.size(); }
  std::uint64_t stabilizer_order(std::size_t i) const;
  // Index of the orbit containing A.
  std::size_t orbit_index(const PrimeContext& ctx, Subset A) const;
  const Subset& rep_of(const PrimeContext& ctx, Subset A) const {
    return reps[orbit_index(ctx, A)];
  }

  std::unordered_map<Word, std::size_t> index;  // canonical word -> rep index
};

inline constexpr std::uint64_t kMaxCatalogSubsets = 100'000'000;

// Throws SizeLimitError when C(p, a) exceeds kMaxCatalogSubsets.
OrbitCatalog build_orbit_catalog(const PrimeContext& ctx, int a);

// Visits every a-subset of Z_p in increasing word order.
template <class Fn>
void for_each_subset(const PrimeContext& ctx, int a, Fn&& fn) {
  const int p = ctx.p();
  if (a < 0 || a > p) return;
  if (a == 0) {
    fn(Subset{});
    return;
  }
  Word w = (a == 64) ? ~Word{0} : ((Word{1} << a) - 1);
  const Word limit = ctx.full_mask();
  while (true) {
    fn(Subset::from_word(w));
    if (w == (limit & ~((Word{1} << (p - a)) - 1))) break;
    // Gosper's hack: next word with the same popcount.
    const Word c = w & (~w + 1);
    const Word r = w + c;
    w = (((r ^ w) >> 2) / c) | r;
  }
}

std::string to_string(Subset A);

}  // namespace addcount
