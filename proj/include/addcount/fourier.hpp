#pragma once

// Fourier analysis of indicator functions on Z_p at high precision.
//
//   1^_A(gamma) = sum_{x in A} omega^{-x gamma},   omega = e^{2 pi i / p}.
//
// Every floating quantity carries an a-priori absolute error bound derived
// from MPFR's correct rounding, and every strict inequality the callers rely
// on is only reported once its margin exceeds ten times that bound.

#include <cstdint>
#include <optional>
#include <vector>

#include "addcount/counting.hpp"
#include "addcount/real.hpp"
#include "addcount/zp.hpp"

namespace addcount {

inline constexpr unsigned kDefaultPrecisionBits = 256;
inline constexpr unsigned kMaxPrecisionBits = 1u << 16;

/// theta = lattice * pi/p + residual, lattice in [0, 2p),
/// residual in [-pi/(2p), pi/(2p)].
struct LatticeAngle {
  std::int64_t lattice = 0;
  Real residual = 0;
  // |residual| is within ten error bounds of zero: theta is taken to be an
  // exact multiple of pi/p.
  bool on_lattice = true;

  // theta in [0, 2pi).
  Real value(int p) const;
  // theta in (-pi, pi].
  Real signed_value(int p) const;
};

struct FourierCoefficient {
  Real re = 0;
  Real im = 0;
  Real magnitude = 0;
  LatticeAngle arg;
  Real arg_err = 0;  // bound on the error of the argument
};

/// The p Fourier coefficients of 1_A. coeffs[0] = (|A|, 0) exactly; err bounds
/// every coefficient (as a complex number) and every magnitude.
struct FourierProfile {
  int p = 0;
  unsigned precision_bits = 0;
  Subset source;
  std::vector<FourierCoefficient> coeffs;
  Real err = 0;
};

FourierProfile dft_indicator(const PrimeContext& ctx, Subset A, unsigned precision_bits = kDefaultPrecisionBits);

struct RhoValue {
  Real value = 0;
  Real err = 0;
  std::vector<int> gammas;  // nonzero frequencies attaining the maximum
};

// Largest nontrivial coefficient magnitude of a profile / subset.
RhoValue rho(const FourierProfile& profile);
RhoValue rho(const PrimeContext& ctx, Subset A, unsigned precision_bits = kDefaultPrecisionBits);

/// The top distinct values m1 > m2 > ... of rho over all a-subsets, with the
/// orbits (and frequencies) attaining each.
struct SpectralLevels {
  struct Attainer {
    Subset rep;
    std::vector<int> gammas;
  };
  struct Level {
    Real magnitude = 0;
    std::vector<Attainer> attainers;
  };

  int p = 0;
  int a = 0;
  unsigned precision_bits = 0;
  Real err = 0;
  std::vector<Level> levels;
  std::vector<Real> gaps;  // levels[i] - levels[i+1]
};

// Doubles precision until every reported gap exceeds 10x the error bound.
// Throws PrecisionError if kMaxPrecisionBits is not enough.
SpectralLevels spectral_levels(const PrimeContext& ctx, int a, int depth = 3,
                               unsigned precision_bits = kDefaultPrecisionBits);

struct PrimaryImage {
  Subset image;
  AffineMap map;  // image = map(D)
  int gamma = 0;  // frequency of D attaining rho(D)
};

// D_pri = gamma*D + l with |1^_{D_pri}(1)| = rho(D) and
// arg 1^_{D_pri}(1) in (-pi/p, pi/p]. Requires 0 < |D| < p.
PrimaryImage primary_image(const PrimeContext& ctx, Subset D, unsigned precision_bits = kDefaultPrecisionBits);

/// Ranking of residues by h(j) = cos(2 pi j/p + theta), theta the argument of
/// 1^_{D}(1) for a primary D.
struct ProjectionScores {
  int p = 0;
  int a = 0;
  LatticeAngle theta;
  std::vector<Real> h;                   // indexed by residue
  std::vector<std::vector<int>> tiers;   // equal-h groups, h descending
  std::vector<int> order;                // j_0, j_1, ..., ties broken as theta -> theta^-
  std::vector<Subset> m1;                // every a-set maximising H_D
  std::vector<Subset> m2_candidates;     // J_{a-1} u {j_{a+1}}, J_{a-2} u {j_{a-1}, j_a}
};

ProjectionScores projection_scores(const PrimeContext& ctx, Subset D_pri,
                                   unsigned precision_bits = kDefaultPrecisionBits);

// H_D(E) = sum_{j in E} h(j).
Real projection_length(const ProjectionScores& scores, Subset E);

/// A real number known to within `err`; `imag` is the residual imaginary
/// part of a sum that is real in exact arithmetic.
struct SpectralValue {
  Real value = 0;
  Real imag = 0;
  Real err = 0;
  unsigned precision_bits = 0;
};

struct FValueOptions {
  unsigned precision_bits = kDefaultPrecisionBits;
  // Escalate precision until log2(err) <= this. Default: 64 bits below a^{k+1}.
  std::optional<double> max_log2_error;
};

// F(A) = sum_{gamma != 0} (1^_A(gamma))^k conj(1^_A(gamma)) = p s_k(A) - a^{k+1}.
SpectralValue F_value(const PrimeContext& ctx, Subset A, const BigInt& k, const FValueOptions& opts = {});

// 2 sum_{gamma=1}^{(p-1)/2} (-1)^{gamma(a-1)(k-1)} D(gamma)^{k+1}, valid for k = 1 mod p, where
// D(gamma) = sin(pi a gamma/p) / sin(pi gamma/p) = +-|1^_I(gamma)|. The sign of D matters when
// k+1 is odd; writing |1^_I(gamma)|^{k+1} instead is only right when every D(gamma) > 0.
SpectralValue F_interval_k1(const PrimeContext& ctx, int a, const BigInt& k,
                            unsigned precision_bits = kDefaultPrecisionBits);
// sum_{gamma=1}^{p-1} e^{-pi i (2t+a-1)(k-1) gamma/p} D(gamma)^{k+1}.
SpectralValue F_translated_interval(const PrimeContext& ctx, int a, int t, const BigInt& k,
                                    unsigned precision_bits = kDefaultPrecisionBits);

// |exact - v.value| <= v.err, evaluated without losing the exact side.
bool agrees_with(const SpectralValue& v, const BigInt& exact);

// theta_t = L * pi/p (mod 2pi) for the dominant term of F(I+t); returns L in [0, 2p).
int translate_angle_lattice(const PrimeContext& ctx, int a, int t, const BigInt& k);

// The optimal translate(s) of [a]: {t, t'} when (a-1)(k-1) is even
// (theta = pi + pi/p and pi - pi/p), {t} when odd (theta = pi).
// Throws std::invalid_argument for k = 1 mod p.
std::vector<int> optimal_t(const PrimeContext& ctx, int a, const BigInt& k);

struct AngleCheck {
  int p = 0;
  int a = 0;
  LatticeAngle arg;      // argument of 1^_{I'}(1), I' = [a-1] u {a}
  Real distance = 0;     // to the lattice (pi/p) Z
  Real err = 0;
  bool off_lattice = false;  // distance > 10 err
  int reduced_size = 0;      // min(a, p-a)
  Real centred_arg = 0;      // argument of the centred I' of size reduced_size, in (-pi, pi]
  bool case_interval_holds = false;  // in (0, pi/p) for odd size, (-pi/p, 0) for even
  bool pass() const { return off_lattice && case_interval_holds; }
};

// Requires p >= 7 and a in [3, p-3].
AngleCheck angle_check_punctured(const PrimeContext& ctx, int a, unsigned precision_bits = kDefaultPrecisionBits);

struct TGoodPoint {
  std::int64_t t = 0;
  std::int64_t s = 0;
  BigInt k;                // s p + 1
  int predicted_sign = 0;  // (-1)^t, sign of cos(s p theta)
  bool cos_sign_matches = false;
};

struct TGoodScan {
  Real theta = 0;  // argument of 1^_{I'}(1) in [0, 2pi)
  Real c = 0;      // p theta - l pi in (-pi, pi), l even
  Real eps = 0;    // min(|c|, pi - |c|) / 3
  std::vector<TGoodPoint> points;
};

// For every t in [t_min, t_max] with t != 0 and sign(t) = sign(c), the s > 0
// with s c closest to t pi (always t-good).
TGoodScan t_good_scan(const PrimeContext& ctx, int a, std::int64_t t_min, std::int64_t t_max,
                      unsigned precision_bits = kDefaultPrecisionBits);

}  // namespace addcount
