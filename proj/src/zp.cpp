#include "addcount/zp.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace addcount {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

PrimeContext::PrimeContext(int p) : p_(p) {
  if (p < 3 || p > 61 || !is_prime(p)) {
    throw std::invalid_argument("p must be an odd prime in [3, 61], got " + std::to_string(p));
  }
  mask_ = (Word{1} << p) - 1;
  inv_.assign(static_cast<std::size_t>(p), 0);
  for (int x = 1; x < p; ++x) {
    for (int y = 1; y < p; ++y) {
      if ((x * y) % p == 1) {
        inv_[static_cast<std::size_t>(x)] = y;
        break;
      }
    }
  }
}

int PrimeContext::inverse(std::int64_t x) const {
  const int r = reduce(x);
  if (r == 0) throw std::invalid_argument("0 has no inverse mod " + std::to_string(p_));
  return inv_[static_cast<std::size_t>(r)];
}

Subset Subset::from_word(Word w) {
  Subset s;
  s.members_ = w;
  s.size_ = std::popcount(w);
  return s;
}

std::vector<int> Subset::residues() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(size_));
  for (Word w = members_; w != 0; w &= w - 1) out.push_back(std::countr_zero(w));
  return out;
}

Subset make_subset(const PrimeContext& ctx, std::span<const std::int64_t> values) {
  Word w = 0;
  for (std::int64_t v : values) {
    const Word bit = Word{1} << ctx.reduce(v);
    if (w & bit) {
      throw std::invalid_argument("residue " + std::to_string(ctx.reduce(v)) + " listed twice (mod " +
                                  std::to_string(ctx.p()) + ")");
    }
    w |= bit;
  }
  return Subset::from_word(w);
}

Subset make_subset(const PrimeContext& ctx, std::initializer_list<std::int64_t> values) {
  return make_subset(ctx, std::span<const std::int64_t>(values.begin(), values.size()));
}

Subset subset_from_word(const PrimeContext& ctx, Word w) {
  if (w & ~ctx.full_mask()) throw std::invalid_argument("membership word has bits at positions >= p");
  return Subset::from_word(w);
}

Subset interval(const PrimeContext& ctx, std::int64_t start, int length) {
  if (length < 0 || length > ctx.p()) throw std::invalid_argument("interval length out of range");
  const Word base = length == ctx.p() ? ctx.full_mask() : ((Word{1} << length) - 1);
  return translate(ctx, Subset::from_word(base), start);
}

Subset punctured_interval(const PrimeContext& ctx, int a) {
  if (a < 2 || a > ctx.p() - 1) throw std::invalid_argument("punctured interval needs 2 <= a <= p-1");
  return Subset::from_word(((Word{1} << (a - 1)) - 1) | (Word{1} << a));
}

Subset complement(const PrimeContext& ctx, Subset A) {
  return Subset::from_word(ctx.full_mask() & ~A.word());
}

namespace {

Word rotate(Word w, int t, int p, Word mask) {
  if (t == 0) return w;
  return ((w << t) | (w >> (p - t))) & mask;
}

}  // namespace

bool is_interval(const PrimeContext& ctx, Subset A) {
  if (A.size() == 0 || A.size() == ctx.p()) return true;
  const Word base = (Word{1} << A.size()) - 1;
  for (int t = 0; t < ctx.p(); ++t) {
    if (rotate(base, t, ctx.p(), ctx.full_mask()) == A.word()) return true;
  }
  return false;
}

std::vector<int> ap_differences(const PrimeContext& ctx, Subset A) {
  std::vector<int> out;
  for (int d = 1; d < ctx.p(); ++d) {
    if (is_interval(ctx, dilate(ctx, A, ctx.inverse(d)))) out.push_back(d);
  }
  return out;
}

int apply(const PrimeContext& ctx, const AffineMap& m, int x) {
  return ctx.reduce(std::int64_t{m.xi} * x + m.eta);
}

AffineMap compose(const PrimeContext& ctx, const AffineMap& f, const AffineMap& g) {
  return {ctx.mul(f.xi, g.xi), ctx.reduce(std::int64_t{f.xi} * g.eta + f.eta)};
}

AffineMap inverse(const PrimeContext& ctx, const AffineMap& m) {
  const int inv = ctx.inverse(m.xi);
  return {inv, ctx.reduce(-std::int64_t{inv} * m.eta)};
}

Subset translate(const PrimeContext& ctx, Subset A, std::int64_t t) {
  return Subset::from_word(rotate(A.word(), ctx.reduce(t), ctx.p(), ctx.full_mask()));
}

Subset dilate(const PrimeContext& ctx, Subset A, std::int64_t xi) {
  const int x = ctx.reduce(xi);
  if (x == 0) throw std::invalid_argument("dilation by 0 is not invertible");
  Word out = 0;
  for (Word w = A.word(); w != 0; w &= w - 1) {
    out |= Word{1} << ctx.mul(std::countr_zero(w), x);
  }
  return Subset::from_word(out);
}

Subset apply_affine(const PrimeContext& ctx, const AffineMap& m, Subset A) {
  return translate(ctx, dilate(ctx, A, m.xi), m.eta);
}

std::pair<Subset, int> translation_canonical_form(const PrimeContext& ctx, Subset A) {
  Word best = A.word();
  int best_t = 0;
  for (int t = 1; t < ctx.p(); ++t) {
    const Word w = rotate(A.word(), t, ctx.p(), ctx.full_mask());
    if (w < best) {
      best = w;
      best_t = t;
    }
  }
  return {Subset::from_word(best), best_t};
}

Subset canonical_form(const PrimeContext& ctx, Subset A) {
  Word best = A.word();
  for (int xi = 1; xi < ctx.p(); ++xi) {
    best = std::min(best, translation_canonical_form(ctx, dilate(ctx, A, xi)).first.word());
  }
  return Subset::from_word(best);
}

Subset dilation_canonical_form(const PrimeContext& ctx, Subset A) {
  Word best = A.word();
  for (int xi = 2; xi < ctx.p(); ++xi) best = std::min(best, dilate(ctx, A, xi).word());
  return Subset::from_word(best);
}

std::string to_string(Subset A) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (int x : A.residues()) {
    if (!first) os << ',';
    os << x;
    first = false;
  }
  os << '}';
  return os.str();
}

}  // namespace addcount
