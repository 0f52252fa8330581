#include "addcount/fourier.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "addcount/errors.hpp"

namespace addcount {

namespace {

struct RootTable {
  std::vector<Real> cos;  // cos(2 pi j / p)
  std::vector<Real> sin;  // sin(2 pi j / p)
};

// Shared read-only tables, built once per (p, precision).
std::shared_ptr<const RootTable> root_table(int p, unsigned bits) {
  static std::mutex mu;
  static std::map<std::pair<int, unsigned>, std::shared_ptr<const RootTable>> tables;
  std::lock_guard lock(mu);
  auto& slot = tables[{p, bits}];
  if (!slot) {
    auto t = std::make_shared<RootTable>();
    const Real two_pi = 2 * const_pi();
    for (int j = 0; j < p; ++j) {
      Real angle = two_pi * j / p;
      t->cos.push_back(cos(angle));
      t->sin.push_back(sin(angle));
    }
    slot = std::move(t);
  }
  return slot;
}

std::int64_t to_int(const Real& x) { return x.convert_to<long long>(); }

std::int64_t mod(std::int64_t x, std::int64_t m) {
  const std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

int mod(const BigInt& x, int m) {
  BigInt r = x % m;
  if (r < 0) r += m;
  return static_cast<int>(r.get_si());
}

// theta in [0, 2 pi) -> lattice index and residual.
LatticeAngle decompose(const Real& theta, int p, const Real& pi, const Real& err) {
  LatticeAngle out;
  const Real step = pi / p;
  const std::int64_t j = to_int(round(theta / step));
  out.residual = theta - step * j;
  out.lattice = mod(j, 2 * std::int64_t{p});
  out.on_lattice = abs(out.residual) <= 10 * err;
  return out;
}

Real fold_signed(Real x, const Real& pi) {
  const Real two_pi = 2 * pi;
  x = fmod(x, two_pi);
  if (x > pi) x -= two_pi;
  if (x <= -pi) x += two_pi;
  return x;
}

struct Bounded {
  Real value = 0;
  Real err = 0;
};

// r^e where r is known to within dr.
Bounded bounded_power(const Real& r, const Real& dr, const Real& e, const Real& u) {
  Bounded out;
  if (r <= 2 * dr) {
    out.value = 0;
    out.err = pow(r + dr, e);
    return out;
  }
  out.value = pow(r, e);
  const Real rel = expm1(e * dr / (r - dr));
  out.err = 2 * out.value * (rel + 4 * u);
  return out;
}

}  // namespace

Real LatticeAngle::value(int p) const {
  const Real pi = const_pi();
  Real theta = pi * lattice / p + residual;
  if (theta < 0) theta += 2 * pi;
  if (theta >= 2 * pi) theta -= 2 * pi;
  return theta;
}

Real LatticeAngle::signed_value(int p) const { return fold_signed(value(p), const_pi()); }

FourierProfile dft_indicator(const PrimeContext& ctx, Subset A, unsigned precision_bits) {
  if (precision_bits < 64) throw std::invalid_argument("dft_indicator needs at least 64 bits of precision");
  const int p = ctx.p();
  PrecisionScope scope(precision_bits);
  const Real& u = scope.unit();
  const auto table = root_table(p, scope.bits());
  const Real pi = const_pi();
  const int a = A.size();
  const auto members = A.residues();

  FourierProfile prof;
  prof.p = p;
  prof.precision_bits = scope.bits();
  prof.source = A;
  // Each root carries <= 21u (argument rounding + cos/sin rounding); the
  // running sums of at most a unit vectors add <= a u per step.
  const Real err_complex = 2 * Real(a) * (a + 21) * u;
  prof.err = err_complex + (4 * a + 1) * u;

  prof.coeffs.resize(static_cast<std::size_t>(p));
  auto& c0 = prof.coeffs[0];
  c0.re = a;
  c0.im = 0;
  c0.magnitude = a;
  c0.arg = LatticeAngle{0, Real(0), true};
  c0.arg_err = a > 0 ? Real(0) : pi;

  for (int gamma = 1; gamma < p; ++gamma) {
    auto& c = prof.coeffs[static_cast<std::size_t>(gamma)];
    c.re = 0;
    c.im = 0;
    for (int x : members) {
      const auto j = static_cast<std::size_t>((x * gamma) % p);
      c.re += table->cos[j];
      c.im -= table->sin[j];
    }
    c.magnitude = sqrt(c.re * c.re + c.im * c.im);
    Real theta = atan2(c.im, c.re);
    if (theta < 0) theta += 2 * pi;
    c.arg_err = c.magnitude > 2 * prof.err ? Real(2 * prof.err / c.magnitude + 16 * u) : pi;
    c.arg = decompose(theta, p, pi, c.arg_err);
  }
  return prof;
}

RhoValue rho(const FourierProfile& profile) {
  RhoValue out;
  out.err = profile.err;
  for (int g = 1; g < profile.p; ++g) out.value = max(out.value, profile.coeffs[static_cast<std::size_t>(g)].magnitude);
  for (int g = 1; g < profile.p; ++g) {
    if (profile.coeffs[static_cast<std::size_t>(g)].magnitude >= out.value - 2 * profile.err) out.gammas.push_back(g);
  }
  return out;
}

RhoValue rho(const PrimeContext& ctx, Subset A, unsigned precision_bits) {
  return rho(dft_indicator(ctx, A, precision_bits));
}

SpectralLevels spectral_levels(const PrimeContext& ctx, int a, int depth, unsigned precision_bits) {
  if (depth < 1) throw std::invalid_argument("depth must be positive");
  const OrbitCatalog cat = build_orbit_catalog(ctx, a);

  for (unsigned bits = precision_bits; bits <= kMaxPrecisionBits; bits *= 2) {
    PrecisionScope scope(bits);
    std::vector<RhoValue> values;
    values.reserve(cat.size());
    for (const auto& rep : cat.reps) values.push_back(rho(ctx, rep, bits));

    std::vector<std::size_t> idx(values.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t l, std::size_t r) { return values[l].value > values[r].value; });

    Real err = 0;
    for (const auto& v : values) err = max(err, v.err);

    SpectralLevels out;
    out.p = ctx.p();
    out.a = a;
    out.precision_bits = scope.bits();
    out.err = err;

    bool ambiguous = false;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      const auto& v = values[idx[i]];
      if (!out.levels.empty() && out.levels.back().magnitude - v.value <= 2 * err) {
        out.levels.back().attainers.push_back({cat.reps[idx[i]], v.gammas});
        continue;
      }
      if (!out.levels.empty()) {
        const Real gap = out.levels.back().magnitude - v.value;
        if (gap <= 10 * err) ambiguous = true;
        if (static_cast<int>(out.levels.size()) >= depth) break;
        out.gaps.push_back(gap);
      }
      out.levels.push_back({v.value, {{cat.reps[idx[i]], v.gammas}}});
    }
    if (!ambiguous) return out;
  }
  throw PrecisionError("spectral gaps stay below 10x the error bound at " + std::to_string(kMaxPrecisionBits) + " bits");
}

namespace {

bool is_primary_angle(const LatticeAngle& arg, int p) {
  // arg in (-pi/p, pi/p]
  if (arg.lattice == 0) return true;
  if (arg.lattice == 1) return arg.on_lattice || arg.residual <= 0;
  if (arg.lattice == 2 * std::int64_t{p} - 1) return !arg.on_lattice && arg.residual > 0;
  return false;
}

}  // namespace

PrimaryImage primary_image(const PrimeContext& ctx, Subset D, unsigned precision_bits) {
  const int p = ctx.p();
  if (D.size() == 0 || D.size() == p) throw std::invalid_argument("primary_image needs 0 < |D| < p");
  PrecisionScope scope(precision_bits);
  const FourierProfile prof = dft_indicator(ctx, D, precision_bits);
  const RhoValue r = rho(prof);
  const int gamma = r.gammas.front();
  const LatticeAngle& arg = prof.coeffs[static_cast<std::size_t>(gamma)].arg;

  // theta' = 2 pi l / p + phi with phi in (-pi/p, pi/p].
  std::int64_t l = 0;
  if (arg.lattice % 2 == 0) {
    l = arg.lattice / 2;
  } else if (arg.on_lattice || arg.residual < 0) {
    l = (arg.lattice - 1) / 2;  // phi = pi/p + residual
  } else {
    l = (arg.lattice + 1) / 2;  // phi = residual - pi/p
  }

  PrimaryImage out;
  out.gamma = gamma;
  out.map = AffineMap{gamma, ctx.reduce(l)};
  out.image = apply_affine(ctx, out.map, D);

  const FourierProfile check = dft_indicator(ctx, out.image, precision_bits);
  const auto& c1 = check.coeffs[1];
  if (abs(c1.magnitude - r.value) > 2 * (prof.err + check.err) || !is_primary_angle(c1.arg, p)) {
    throw std::logic_error("primary image post-check failed for " + to_string(D));
  }
  return out;
}

ProjectionScores projection_scores(const PrimeContext& ctx, Subset D_pri, unsigned precision_bits) {
  const int p = ctx.p();
  PrecisionScope scope(precision_bits);
  const Real pi = const_pi();
  const FourierProfile prof = dft_indicator(ctx, D_pri, precision_bits);
  const LatticeAngle& arg = prof.coeffs[1].arg;
  if (!is_primary_angle(arg, p)) throw std::invalid_argument("projection_scores needs a primary set");

  ProjectionScores out;
  out.p = p;
  out.a = D_pri.size();
  out.theta = arg;
  const Real theta = arg.signed_value(p);

  // exact_m: theta = m pi / p exactly (m in {0, 1}); ties only occur then.
  std::optional<int> exact_m;
  if (arg.on_lattice) exact_m = static_cast<int>(arg.lattice);

  out.h.resize(static_cast<std::size_t>(p));
  std::vector<Real> angle(static_cast<std::size_t>(p));
  for (int j = 0; j < p; ++j) {
    angle[static_cast<std::size_t>(j)] = fold_signed(2 * pi * j / p + theta, pi);
    out.h[static_cast<std::size_t>(j)] = cos(2 * pi * j / p + theta);
  }

  // Sort key: distance of 2 pi j/p + theta to 0 on the circle; among equal
  // distances the positive angle first (the order just below theta).
  auto signed_units = [&](int j) {
    const std::int64_t v = mod(2 * std::int64_t{j} + *exact_m, 2 * std::int64_t{p});
    return v <= p ? v : v - 2 * std::int64_t{p};
  };
  std::vector<int> order(static_cast<std::size_t>(p));
  std::iota(order.begin(), order.end(), 0);
  if (exact_m) {
    std::sort(order.begin(), order.end(), [&](int l, int r) {
      const auto sl = signed_units(l);
      const auto sr = signed_units(r);
      if (std::llabs(sl) != std::llabs(sr)) return std::llabs(sl) < std::llabs(sr);
      return sl > sr;
    });
  } else {
    std::sort(order.begin(), order.end(), [&](int l, int r) {
      return abs(angle[static_cast<std::size_t>(l)]) < abs(angle[static_cast<std::size_t>(r)]);
    });
  }
  out.order = order;

  for (std::size_t i = 0; i < order.size(); ++i) {
    const bool tied = exact_m && i > 0 && std::llabs(signed_units(order[i])) == std::llabs(signed_units(order[i - 1]));
    if (tied) {
      out.tiers.back().push_back(order[i]);
    } else {
      out.tiers.push_back({order[i]});
    }
  }

  // M1: full tiers, then every choice from the tier straddling position a.
  const int a = out.a;
  Word base = 0;
  int taken = 0;
  for (const auto& tier : out.tiers) {
    const int n = static_cast<int>(tier.size());
    if (taken + n <= a) {
      for (int j : tier) base |= Word{1} << j;
      taken += n;
      if (taken == a) {
        out.m1.push_back(Subset::from_word(base));
        break;
      }
      continue;
    }
    const int need = a - taken;
    for (unsigned pick = 0; pick < (1u << n); ++pick) {
      if (std::popcount(pick) != need) continue;
      Word w = base;
      for (int b = 0; b < n; ++b) {
        if ((pick >> b) & 1u) w |= Word{1} << tier[static_cast<std::size_t>(b)];
      }
      out.m1.push_back(Subset::from_word(w));
    }
    std::sort(out.m1.begin(), out.m1.end());
    break;
  }
  if (a == 0) out.m1.push_back(Subset{});

  if (a >= 2 && a + 1 < p) {
    auto prefix = [&](int n) {
      Word w = 0;
      for (int i = 0; i < n; ++i) w |= Word{1} << order[static_cast<std::size_t>(i)];
      return w;
    };
    const auto at = [&](int i) { return Word{1} << order[static_cast<std::size_t>(i)]; };
    out.m2_candidates.push_back(Subset::from_word(prefix(a - 1) | at(a + 1)));
    out.m2_candidates.push_back(Subset::from_word(prefix(a - 2) | at(a - 1) | at(a)));
  }
  return out;
}

Real projection_length(const ProjectionScores& scores, Subset E) {
  Real sum = 0;
  for (int j : E.residues()) sum += scores.h[static_cast<std::size_t>(j)];
  return sum;
}

namespace {

// Accumulates sum_gamma |c|^{k+1} e^{i psi_gamma}, psi known to within dpsi.
struct TermSum {
  Real re = 0;
  Real im = 0;
  Real err = 0;
  Real abs_sum = 0;

  void add(const Bounded& mag, const Real& psi, const Real& dpsi, const Real& u) {
    re += mag.value * cos(psi);
    im += mag.value * sin(psi);
    const Real upper = mag.value + mag.err;
    err += mag.err + upper * (dpsi + 4 * u);
    abs_sum += upper;
  }

  SpectralValue finish(unsigned bits, std::size_t terms, const Real& u) const {
    SpectralValue v;
    v.value = re;
    v.imag = im;
    v.err = (err + abs_sum * static_cast<long>(terms + 2) * u) * Real(1.0625);
    v.precision_bits = bits;
    return v;
  }
};

double log2_of(const Real& x) {
  if (x <= 0) return -1e300;
  return static_cast<double>(log2(x));
}

}  // namespace

SpectralValue F_value(const PrimeContext& ctx, Subset A, const BigInt& k, const FValueOptions& opts) {
  if (k < 2) throw std::invalid_argument("F_value needs k >= 2");
  const int p = ctx.p();
  const int a = A.size();
  double target = 0;
  if (opts.max_log2_error) {
    target = *opts.max_log2_error;
  } else {
    target = a > 1 ? (k.get_d() + 1) * std::log2(static_cast<double>(a)) - 64 : -64;
  }
  const int km1_mod = mod(BigInt(k - 1), 2 * p);

  for (unsigned bits = opts.precision_bits; bits <= kMaxPrecisionBits; bits *= 2) {
    PrecisionScope scope(bits);
    const Real& u = scope.unit();
    const Real pi = const_pi();
    const FourierProfile prof = dft_indicator(ctx, A, bits);
    const Real exponent = to_real(BigInt(k + 1));
    const Real km1 = to_real(BigInt(k - 1));

    TermSum sum;
    for (int g = 1; g < p; ++g) {
      const auto& c = prof.coeffs[static_cast<std::size_t>(g)];
      const Bounded mag = bounded_power(c.magnitude, prof.err, exponent, u);
      // (k-1) theta = ((k-1) lattice mod 2p) pi/p + (k-1) residual
      const std::int64_t lattice = mod(std::int64_t{km1_mod} * c.arg.lattice, 2 * std::int64_t{p});
      const Real psi = pi * lattice / p + km1 * c.arg.residual;
      const Real dpsi = km1 * (c.arg_err + u * abs(c.arg.residual)) + 20 * u;
      sum.add(mag, psi, min(dpsi, Real(2 * pi)), u);
    }
    SpectralValue v = sum.finish(scope.bits(), static_cast<std::size_t>(p), u);
    if (log2_of(v.err) <= target) return v;
  }
  throw PrecisionError("F_value: error bound above tolerance at " + std::to_string(kMaxPrecisionBits) + " bits");
}

SpectralValue F_interval_k1(const PrimeContext& ctx, int a, const BigInt& k, unsigned precision_bits) {
  const int p = ctx.p();
  if (mod(k, p) != 1) throw std::invalid_argument("F_interval_k1 needs k = 1 mod p");
  PrecisionScope scope(precision_bits);
  const Real& u = scope.unit();
  const FourierProfile prof = dft_indicator(ctx, interval(ctx, 0, a), precision_bits);
  const Real exponent = to_real(BigInt(k + 1));
  const int km1_parity = mod(BigInt(k - 1), 2);
  const int kp1_parity = mod(BigInt(k + 1), 2);
  TermSum sum;
  for (int g = 1; g <= (p - 1) / 2; ++g) {
    const Bounded mag = bounded_power(prof.coeffs[static_cast<std::size_t>(g)].magnitude, prof.err, exponent, u);
    // the kernel sin(pi a g/p)/sin(pi g/p) is negative iff floor(a g/p) is odd
    const int kernel_odd = (a * g / p) % 2;
    const bool odd = ((g * (a - 1) * km1_parity) + kernel_odd * kp1_parity) % 2 != 0;
    Bounded twice{2 * mag.value, 2 * mag.err};
    sum.add(twice, odd ? const_pi() : Real(0), Real(0), u);
  }
  return sum.finish(scope.bits(), static_cast<std::size_t>(p), u);
}

SpectralValue F_translated_interval(const PrimeContext& ctx, int a, int t, const BigInt& k, unsigned precision_bits) {
  const int p = ctx.p();
  PrecisionScope scope(precision_bits);
  const Real& u = scope.unit();
  const Real pi = const_pi();
  const FourierProfile prof = dft_indicator(ctx, interval(ctx, t, a), precision_bits);
  const Real exponent = to_real(BigInt(k + 1));
  const int km1_mod = mod(BigInt(k - 1), 2 * p);
  const int kp1_parity = mod(BigInt(k + 1), 2);
  TermSum sum;
  for (int g = 1; g < p; ++g) {
    const Bounded mag = bounded_power(prof.coeffs[static_cast<std::size_t>(g)].magnitude, prof.err, exponent, u);
    const int kernel_odd = (a * g / p) % 2;
    const std::int64_t lattice =
        mod(-(2 * std::int64_t{t} + a - 1) * km1_mod % (2 * p) * g + std::int64_t{p} * kernel_odd * kp1_parity,
            2 * std::int64_t{p});
    sum.add(mag, pi * lattice / p, 20 * u, u);
  }
  return sum.finish(scope.bits(), static_cast<std::size_t>(p), u);
}

bool agrees_with(const SpectralValue& v, const BigInt& exact) {
  const auto exact_bits = static_cast<unsigned>(mpz_sizeinbase(exact.get_mpz_t(), 2));
  PrecisionScope scope(std::max(v.precision_bits, exact_bits) + 64);
  const Real e = to_real(exact);
  Real value = v.value;
  Real err = v.err;
  return abs(e - value) <= err + abs(e) * scope.unit();
}

int translate_angle_lattice(const PrimeContext& ctx, int a, int t, const BigInt& k) {
  const std::int64_t two_p = 2 * std::int64_t{ctx.p()};
  const std::int64_t km1 = mod(BigInt(k - 1), static_cast<int>(two_p));
  return static_cast<int>(mod(-(2 * std::int64_t{t} + a - 1) * km1, two_p));
}

std::vector<int> optimal_t(const PrimeContext& ctx, int a, const BigInt& k) {
  const int p = ctx.p();
  if (k < 2) throw std::invalid_argument("optimal_t needs k >= 2");
  const int km1 = mod(BigInt(k - 1), p);
  if (km1 == 0) throw std::invalid_argument("optimal_t needs k != 1 mod p");
  const bool even = ((a - 1) % 2 == 0) || mod(BigInt(k - 1), 2) == 0;
  const std::vector<int> targets = even ? std::vector<int>{p + 1, p - 1} : std::vector<int>{p};

  // L = -(2t + a - 1)(k - 1)  =>  t = 2^{-1} (-L (k-1)^{-1} - (a - 1))  (mod p)
  std::vector<int> out;
  for (int L : targets) {
    const int t = ctx.mul(ctx.inverse(2), ctx.reduce(-std::int64_t{L} * ctx.inverse(km1) - (a - 1)));
    if (translate_angle_lattice(ctx, a, t, k) != L) throw std::logic_error("optimal_t: lattice parity mismatch");
    out.push_back(t);
  }
  return out;
}

namespace {

Subset centred_punctured(const PrimeContext& ctx, int b) {
  std::vector<std::int64_t> xs;
  if (b % 2 == 1) {
    const int m = (b - 1) / 2;
    xs.push_back(-m - 1);
    for (int x = -m + 1; x <= m; ++x) xs.push_back(x);
  } else {
    const int m = (b - 2) / 2;
    xs.push_back(-m - 1);
    for (int x = -m + 1; x <= m + 1; ++x) xs.push_back(x);
  }
  return make_subset(ctx, xs);
}

}  // namespace

AngleCheck angle_check_punctured(const PrimeContext& ctx, int a, unsigned precision_bits) {
  const int p = ctx.p();
  if (p < 7 || a < 3 || a > p - 3) throw std::invalid_argument("angle check needs p >= 7 and a in [3, p-3]");
  PrecisionScope scope(precision_bits);
  const Real pi = const_pi();

  AngleCheck out;
  out.p = p;
  out.a = a;
  const FourierProfile prof = dft_indicator(ctx, punctured_interval(ctx, a), precision_bits);
  const auto& c1 = prof.coeffs[1];
  out.arg = c1.arg;
  out.distance = abs(c1.arg.residual);
  out.err = c1.arg_err;
  out.off_lattice = out.distance > 10 * out.err;

  out.reduced_size = std::min(a, p - a);
  const FourierProfile centred = dft_indicator(ctx, centred_punctured(ctx, out.reduced_size), precision_bits);
  const auto& cc = centred.coeffs[1];
  out.centred_arg = cc.arg.signed_value(p);
  const Real margin = 10 * cc.arg_err;
  if (out.reduced_size % 2 == 1) {
    out.case_interval_holds = out.centred_arg > margin && out.centred_arg < pi / p - margin;
  } else {
    out.case_interval_holds = out.centred_arg > -pi / p + margin && out.centred_arg < -margin;
  }
  return out;
}

TGoodScan t_good_scan(const PrimeContext& ctx, int a, std::int64_t t_min, std::int64_t t_max, unsigned precision_bits) {
  const int p = ctx.p();
  if (p < 7 || a < 3 || a > p - 3) throw std::invalid_argument("t_good_scan needs p >= 7 and a in [3, p-3]");
  PrecisionScope scope(precision_bits);
  const Real pi = const_pi();
  const FourierProfile prof = dft_indicator(ctx, punctured_interval(ctx, a), precision_bits);
  const auto& c1 = prof.coeffs[1];

  TGoodScan out;
  out.theta = c1.arg.value(p);
  out.c = fold_signed(p * out.theta, pi);
  const Real c_err = p * c1.arg_err;
  const Real abs_c = abs(out.c);
  if (abs_c <= 10 * c_err || pi - abs_c <= 10 * c_err) {
    throw PrecisionError("p*theta is not separated from the lattice pi*Z");
  }
  out.eps = min(abs_c, pi - abs_c) / 3;
  const int c_sign = out.c > 0 ? 1 : -1;

  for (std::int64_t t = t_min; t <= t_max; ++t) {
    if (t == 0 || (t > 0 ? 1 : -1) != c_sign) continue;
    const Real lo = (Real(t) - Real(0.5)) * pi + out.eps;
    const Real hi = (Real(t) + Real(0.5)) * pi - out.eps;
    const std::int64_t s0 = to_int(round(Real(t) * pi / out.c));
    std::optional<std::int64_t> found;
    for (std::int64_t s : {s0, s0 - 1, s0 + 1}) {
      if (s <= 0) continue;
      const Real sc = out.c * s;
      if (sc > lo && sc < hi) {
        found = s;
        break;
      }
    }
    if (!found) continue;
    TGoodPoint pt;
    pt.t = t;
    pt.s = *found;
    pt.k = BigInt(pt.s) * p + 1;
    pt.predicted_sign = (t % 2 == 0) ? 1 : -1;
    const Real cs = cos(out.theta * p * pt.s);
    pt.cos_sign_matches = (cs > 0 ? 1 : -1) == pt.predicted_sign;
    out.points.push_back(pt);
  }
  return out;
}

}  // namespace addcount
