#include "addcount/pollard.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "addcount/errors.hpp"

namespace addcount {

namespace {

std::vector<Subset> interval_family(const PrimeContext& ctx, std::span<const int> sizes) {
  std::vector<Subset> out;
  out.reserve(sizes.size());
  for (int a : sizes) out.push_back(interval(ctx, 0, a));
  return out;
}

bool at_least(const BigInt& v, std::int64_t r) { return mpz_cmp_si(v.get_mpz_t(), r) >= 0; }

std::int64_t to_int64(const BigInt& v) {
  if (!v.fits_slong_p()) throw SizeLimitError("count exceeds the 64-bit threshold range");
  return v.get_si();
}

}  // namespace

ThresholdProfile threshold_profile(const CountVector& sigma) {
  BigInt top = 0;
  for (const auto& e : sigma.entries()) top = std::max(top, e);
  if (top > kMaxProfileLength) {
    throw SizeLimitError("threshold profile would need " + top.get_str() + " levels");
  }
  const std::int64_t r_max = to_int64(top) + 1;
  ThresholdProfile prof;
  prof.r_max = r_max;
  prof.n.assign(static_cast<std::size_t>(r_max + 1), 0);
  for (const auto& e : sigma.entries()) ++prof.n[static_cast<std::size_t>(to_int64(e))];
  // histogram -> suffix sums
  for (std::int64_t r = r_max - 1; r >= 0; --r) {
    prof.n[static_cast<std::size_t>(r)] += prof.n[static_cast<std::size_t>(r + 1)];
  }
  return prof;
}

ThresholdProfile threshold_profile(const PrimeContext& ctx, std::span<const Subset> sets) {
  return threshold_profile(sigma_vector(ctx, sets));
}

Subset level_set(const CountVector& sigma, std::int64_t r) {
  Word w = 0;
  for (std::size_t x = 0; x < sigma.size(); ++x) {
    if (at_least(sigma[x], r)) w |= Word{1} << x;
  }
  return Subset::from_word(w);
}

BigInt partial_threshold_sum(const CountVector& sigma, std::int64_t r) {
  BigInt sum = 0;
  if (r <= 0) return sum;
  for (const auto& e : sigma.entries()) {
    if (at_least(e, r)) {
      sum += r;
    } else {
      sum += e;
    }
  }
  return sum;
}

std::int64_t critical_r0(const PrimeContext& ctx, std::span<const int> sizes) {
  const int p = ctx.p();
  if (sizes.size() < 2) throw std::invalid_argument("critical_r0 needs sizes (a0, a1, ..., ak) with k >= 1");
  const int a0 = sizes[0];
  if (a0 <= 0 || a0 >= p) throw std::invalid_argument("critical_r0 needs 0 < a0 < p");
  for (int a : sizes.subspan(1)) {
    if (a < 0 || a > p) throw std::invalid_argument("set size out of range");
  }
  const auto ivs = interval_family(ctx, sizes.subspan(1));
  const CountVector sigma = sigma_vector(ctx, ivs);
  // n_r > p - a0 iff at least p - a0 + 1 residues have sigma >= r.
  std::vector<BigInt> sorted(sigma.entries().begin(), sigma.entries().end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  return to_int64(sorted[static_cast<std::size_t>(p - a0)]);
}

PollardSums pollard_lhs_rhs(const PrimeContext& ctx, std::span<const Subset> sets, std::int64_t r) {
  if (r < 1) throw std::invalid_argument("pollard_lhs_rhs needs r >= 1");
  std::vector<int> sizes;
  for (const auto& s : sets) sizes.push_back(s.size());
  const auto ivs = interval_family(ctx, sizes);
  return {partial_threshold_sum(sigma_vector(ctx, sets), r), partial_threshold_sum(sigma_vector(ctx, ivs), r)};
}

std::string to_string(EqualityCase::Tag tag) {
  switch (tag) {
    case EqualityCase::Tag::R0EqualsA1: return "R0_EQUALS_A1";
    case EqualityCase::Tag::LargeSum: return "LARGE_SUM";
    case EqualityCase::Tag::ReflectionPair: return "REFLECTION_PAIR";
    case EqualityCase::Tag::CommonDifferenceAps: return "COMMON_DIFFERENCE_APS";
    case EqualityCase::Tag::VosperComplement: return "VOSPER_COMPLEMENT";
    case EqualityCase::Tag::None: return "NONE";
  }
  return "NONE";
}

EqualityCase classify_equality_k2(const PrimeContext& ctx, Subset A1, Subset A2, std::int64_t r0) {
  const int p = ctx.p();
  const int a1 = A1.size();
  const int a2 = A2.size();
  if (!(1 <= r0 && r0 <= a1 && a1 <= a2 && a2 < p)) {
    throw std::invalid_argument("classify_equality_k2 needs 1 <= r0 <= |A1| <= |A2| < p");
  }
  using Tag = EqualityCase::Tag;
  EqualityCase out;
  auto mark = [&](Tag t) { out.mask |= 1u << static_cast<unsigned>(t); };

  if (r0 == a1) mark(Tag::R0EqualsA1);
  if (a1 + a2 >= p + r0) mark(Tag::LargeSum);

  const Subset reflected = dilate(ctx, A1, -1);
  if (a1 == a2 && a1 == r0 + 1) {
    for (int g = 0; g < p; ++g) {
      if (translate(ctx, reflected, g) == A2) {
        out.g = g;
        mark(Tag::ReflectionPair);
        break;
      }
    }
  }

  const auto d1 = ap_differences(ctx, A1);
  const auto d2 = ap_differences(ctx, A2);
  for (int d : d1) {
    if (std::find(d2.begin(), d2.end(), d) != d2.end()) {
      out.d = d;
      mark(Tag::CommonDifferenceAps);
      break;
    }
  }

  if (r0 == 1 && a1 + a2 == p) {
    for (int g = 0; g < p; ++g) {
      if (complement(ctx, translate(ctx, reflected, g)) == A2) {
        out.vosper_g = g;
        mark(Tag::VosperComplement);
        break;
      }
    }
  }

  for (unsigned i = 0; i < static_cast<unsigned>(Tag::None); ++i) {
    if ((out.mask >> i) & 1u) {
      out.tag = static_cast<Tag>(i);
      break;
    }
  }
  return out;
}

ExtremalityChecker::ExtremalityChecker(const PrimeContext& ctx, std::span<const Subset> rest)
    : full_(ctx.full_mask()) {
  const int p = ctx.p();
  if (rest.empty()) throw std::invalid_argument("need at least one summand set");
  std::vector<int> sizes{1};
  for (const auto& s : rest) {
    if (s.size() < 1 || s.size() > p - 1) throw std::invalid_argument("extremality conditions need all sizes in [1, p-1]");
    sizes.push_back(s.size());
  }
  sigma_ = sigma_vector(ctx, rest);
  const auto ivs = interval_family(ctx, std::span<const int>(sizes).subspan(1));
  const CountVector sigma_iv = sigma_vector(ctx, ivs);

  by_size_.resize(static_cast<std::size_t>(p));
  for (int a0 = 1; a0 < p; ++a0) {
    sizes[0] = a0;
    Level& lv = by_size_[static_cast<std::size_t>(a0)];
    lv.r0 = critical_r0(ctx, sizes);
    lv.next = level_set(sigma_, lv.r0 + 1).word();
    lv.at = level_set(sigma_, lv.r0).word();
    lv.equality = partial_threshold_sum(sigma_, lv.r0) == partial_threshold_sum(sigma_iv, lv.r0);
  }
}

ExtremalityConditions ExtremalityChecker::check(Subset A0) const {
  const auto a0 = static_cast<std::size_t>(A0.size());
  if (a0 < 1 || a0 >= by_size_.size()) throw std::invalid_argument("extremality conditions need 1 <= |A0| <= p-1");
  const Level& lv = by_size_[a0];
  ExtremalityConditions out;
  out.r0 = lv.r0;
  out.misses_next_level = (A0.word() & lv.next) == 0;
  out.covers_group = (A0.word() | lv.at) == full_;
  out.pollard_equality = lv.equality;
  return out;
}

ExtremalityConditions check_extremality_conditions(const PrimeContext& ctx, Subset A0,
                                                   std::span<const Subset> rest) {
  return ExtremalityChecker(ctx, rest).check(A0);
}

namespace {

bool meets_levels_minimally(const CountVector& sigma, Subset I, int p) {
  std::set<BigInt> levels;
  for (const auto& e : sigma.entries()) {
    if (sgn(e) > 0) levels.insert(e);
  }
  for (const auto& v : levels) {
    const Subset N = level_set(sigma, to_int64(v));
    const int hit = Subset::from_word(N.word() & I.word()).size();
    if (hit != std::max(0, N.size() + I.size() - p)) return false;
  }
  return true;
}

}  // namespace

int optimal_interval_translate(const PrimeContext& ctx, std::span<const int> sizes) {
  const int p = ctx.p();
  if (sizes.size() < 2) throw std::invalid_argument("need sizes (a0, a1, ..., ak)");
  const int a0 = sizes[0];
  if (a0 <= 0 || a0 >= p) throw std::invalid_argument("optimal_interval_translate needs 0 < a0 < p");

  const auto ivs = interval_family(ctx, sizes.subspan(1));
  const CountVector sigma = sigma_vector(ctx, ivs);

  // Doubled coordinates: the N_r share centre c with 2c = sum (a_i - 1); put
  // the centre of [a0]+t (doubled: 2t + a0 - 1) at 2c + p mod 2p.
  std::int64_t two_c = 0;
  for (int a : sizes.subspan(1)) two_c += a - 1;
  const std::int64_t target = ((two_c + p - (a0 - 1)) % (2 * p) + 2 * p) % (2 * p);
  std::vector<std::int64_t> candidates;
  if (target % 2 == 0) {
    candidates.push_back(target / 2);
  } else {
    candidates.push_back((target - 1) / 2);
    candidates.push_back((target + 1) / 2);
  }
  for (std::int64_t t : candidates) {
    const int tt = ctx.reduce(t);
    if (meets_levels_minimally(sigma, interval(ctx, tt, a0), p)) return tt;
  }
  throw std::logic_error("no translate of [a0] meets the nested level intervals minimally");
}

}  // namespace addcount
