#pragma once

// Dyadic Littlewood-Paley machinery on the circle: the trapezoidal kernels
// W_n, L^p quadrature via FFT, dyadic profiles 2^{ns} ||f * W_n||_p, Besov
// norms and hard-block coefficient bounds.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <vector>

#include "scottish_lab/core.hpp"
#include "scottish_lab/fft.hpp"
#include "scottish_lab/parallel.hpp"

namespace scottish_lab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr unsigned kDefaultOversample = 8;
inline constexpr unsigned kMaxDyadicLevel = 40;

/// Fourier multiplier of W_n at frequency k. W_0 = 1 + z; for n >= 1 the
/// trapezoid with peak 1 at 2^n, linear on [2^{n-1}, 2^n] and [2^n, 2^{n+1}],
/// zero outside (2^{n-1}, 2^{n+1}). All values are dyadic rationals, exact in
/// binary floating point.
inline double wn_multiplier(unsigned n, std::uint64_t k) {
  if (n == 0) return k <= 1 ? 1.0 : 0.0;
  const std::uint64_t lo = std::uint64_t{1} << (n - 1);
  const std::uint64_t mid = std::uint64_t{1} << n;
  const std::uint64_t hi = std::uint64_t{2} << n;
  if (k <= lo || k >= hi) return 0.0;
  if (k <= mid) return static_cast<double>(k - lo) / static_cast<double>(lo);
  return static_cast<double>(hi - k) / static_cast<double>(mid);
}

/// Coefficients of W_n, length 2 for n = 0 and 2^{n+1} otherwise.
inline CoeffSeq wn_coeffs(unsigned n) {
  if (n > kMaxDyadicLevel) throw Error(ErrorKind::InvalidRegime, "wn_coeffs: n too large");
  const std::size_t len = n == 0 ? 2 : (std::size_t{2} << n);
  std::vector<Complex> c(len);
  for (std::size_t k = 0; k < len; ++k) c[k] = wn_multiplier(n, k);
  return CoeffSeq(std::move(c));
}

struct LpNorm {
  double value = 0.0;
  std::size_t grid = 0;
  /// A-priori quadrature error pi * D * max_grid|f| / G.
  double error_bound = 0.0;
};

inline void validate_exponent(double p, const char* name) {
  if (!(p >= 1.0)) throw Error(ErrorKind::InvalidExponent, std::string(name) + " must lie in [1, inf]");
}

inline std::size_t quadrature_grid(std::size_t length, unsigned oversample) {
  return fft::next_pow2(static_cast<std::size_t>(oversample) * length);
}

/// Normalized L^p norm on the unit circle from G uniform samples,
/// G = next power of two >= oversample * (D + 1).
inline LpNorm lp_norm_circle(const CoeffSeq& f, double p, unsigned oversample = kDefaultOversample) {
  validate_exponent(p, "p");
  if (oversample < 2) throw Error(ErrorKind::InvalidRegime, "oversample must be >= 2");
  const std::size_t grid = quadrature_grid(f.size(), oversample);
  const auto values = fft::sample_on_circle(f.coeffs(), grid);

  double max_mod = 0.0;
  for (const auto& v : values) max_mod = std::max(max_mod, std::abs(v));

  double norm = 0.0;
  if (std::isinf(p)) {
    norm = max_mod;
  } else if (p == 1.0) {
    double sum = 0.0;
    for (const auto& v : values) sum += std::abs(v);
    norm = sum / static_cast<double>(grid);
  } else if (p == 2.0) {
    double sum = 0.0;
    for (const auto& v : values) sum += std::norm(v);
    norm = std::sqrt(sum / static_cast<double>(grid));
  } else {
    double sum = 0.0;
    for (const auto& v : values) sum += std::pow(std::abs(v), p);
    norm = std::pow(sum / static_cast<double>(grid), 1.0 / p);
  }
  const double bound =
      std::numbers::pi * static_cast<double>(f.degree()) * max_mod / static_cast<double>(grid);
  return {norm, grid, bound};
}

/// Coefficients of f * W_n (Hadamard product with the multiplier), length
/// 2^{n+1} (2 for n = 0). Returns false when the product vanishes.
inline bool block_component(const CoeffSeq& f, unsigned n, std::vector<Complex>& out) {
  const std::size_t len = n == 0 ? 2 : (std::size_t{2} << n);
  const std::size_t lo = n == 0 ? 0 : (std::size_t{1} << (n - 1)) + 1;
  out.assign(len, Complex{});
  bool nonzero = false;
  for (std::size_t k = lo; k < len && k < f.size(); ++k) {
    out[k] = f[k] * wn_multiplier(n, k);
    nonzero = nonzero || out[k] != Complex{};
  }
  return nonzero;
}

struct DyadicProfile {
  double s = 0.0;
  double p = 1.0;
  unsigned nmax = 0;
  unsigned oversample = kDefaultOversample;
  /// v_n = 2^{ns} ||f * W_n||_p, n = 0..nmax.
  std::vector<double> values;
  /// 2^{ns} times the quadrature bound of each entry.
  std::vector<double> error_bounds;
  /// Grid size of the finest level.
  std::size_t grid = 0;
  std::size_t degree = 0;
  /// Set when 2^{nmax+1} < deg f: norms built from this profile are lower bounds.
  bool truncated = false;
};

inline DyadicProfile dyadic_profile(const CoeffSeq& f, double s, double p, unsigned nmax,
                                    unsigned oversample = kDefaultOversample) {
  validate_exponent(p, "p");
  if (nmax > kMaxDyadicLevel) throw Error(ErrorKind::InvalidRegime, "nmax too large");
  if (oversample < 2) throw Error(ErrorKind::InvalidRegime, "oversample must be >= 2");

  DyadicProfile prof;
  prof.s = s;
  prof.p = p;
  prof.nmax = nmax;
  prof.oversample = oversample;
  prof.degree = f.degree();
  prof.truncated = (std::uint64_t{2} << nmax) < f.degree();
  prof.values.assign(nmax + 1, 0.0);
  prof.error_bounds.assign(nmax + 1, 0.0);
  prof.grid = quadrature_grid(nmax == 0 ? 2 : (std::size_t{2} << nmax), oversample);

  parallel_for(nmax + 1, [&](std::size_t i) {
    const auto n = static_cast<unsigned>(i);
    // Levels whose support starts past the degree contribute nothing.
    if (n >= 1 && (std::uint64_t{1} << (n - 1)) >= f.size()) return;
    std::vector<Complex> part;
    if (!block_component(f, n, part)) return;
    const LpNorm lp = lp_norm_circle(CoeffSeq(std::move(part)), p, oversample);
    const double weight = std::exp2(static_cast<double>(n) * s);
    prof.values[i] = weight * lp.value;
    prof.error_bounds[i] = weight * lp.error_bound;
  });
  return prof;
}

/// l^q norm of a nonnegative array (max for q = inf).
inline double lq_norm(std::span<const double> v, double q) {
  validate_exponent(q, "q");
  if (std::isinf(q)) {
    double m = 0.0;
    for (double x : v) m = std::max(m, x);
    return m;
  }
  if (q == 1.0) {
    double sum = 0.0;
    for (double x : v) sum += x;
    return sum;
  }
  double sum = 0.0;
  for (double x : v) sum += std::pow(x, q);
  return std::pow(sum, 1.0 / q);
}

struct BesovNorm {
  DyadicProfile profile;
  double q = 1.0;
  double norm = 0.0;
  double error_bound = 0.0;
  /// The norm is a lower bound when the profile is truncated.
  bool truncated = false;
};

inline BesovNorm besov_norm(const CoeffSeq& f, double s, double p, double q, unsigned nmax,
                            unsigned oversample = kDefaultOversample) {
  validate_exponent(q, "q");
  BesovNorm out;
  out.profile = dyadic_profile(f, s, p, nmax, oversample);
  out.q = q;
  out.norm = lq_norm(out.profile.values, q);
  out.error_bound = lq_norm(out.profile.error_bounds, q);
  out.truncated = out.profile.truncated;
  return out;
}

/// Smallest nmax with 2^{nmax} >= deg f, so the profile reconstructs f.
inline unsigned covering_level(const CoeffSeq& f) {
  unsigned n = 0;
  while ((std::uint64_t{1} << n) < f.degree()) ++n;
  return n;
}

// ---------------------------------------------------------------------------
// Hard-block coefficient bounds

/// E_n = sum_{k in H_n} |gamma_k|^2 for n = 0..nmax.
inline std::vector<double> hard_block_energies(const CoeffSeq& gamma, unsigned nmax) {
  std::vector<double> e(nmax + 1, 0.0);
  for (unsigned n = 0; n <= nmax; ++n) {
    const BlockIndex b{n};
    if (b.hard_lo() >= gamma.size()) break;
    const std::uint64_t hi = std::min<std::uint64_t>(b.hard_hi(), gamma.size() - 1);
    double sum = 0.0;
    for (std::uint64_t k = b.hard_lo(); k <= hi; ++k) sum += std::norm(gamma[k]);
    e[n] = sum;
  }
  return e;
}

/// Terms 2^n E_n^{1/2} of the hard-block bound.
inline std::vector<double> hard_block_terms(std::span<const double> energies) {
  std::vector<double> t(energies.size());
  for (std::size_t n = 0; n < energies.size(); ++n)
    t[n] = std::exp2(static_cast<double>(n)) * std::sqrt(energies[n]);
  return t;
}

/// |gamma_0| + sum_n 2^n E_n^{1/2}, given the block energies.
inline double hard_block_bound_from_energies(double abs_gamma0, std::span<const double> energies) {
  double m = abs_gamma0;
  for (double t : hard_block_terms(energies)) m += t;
  return m;
}

/// M(gamma) = |gamma_0| + sum_{n=0}^{nmax} 2^n (sum_{k in H_n} |gamma_k|^2)^{1/2}.
/// Index 0 is carried separately since the hard blocks start at 1.
inline double hard_block_bound(const CoeffSeq& gamma, unsigned nmax) {
  return hard_block_bound_from_energies(std::abs(gamma[0]), hard_block_energies(gamma, nmax));
}

/// Largest n whose hard block starts inside gamma.
inline unsigned hard_block_cover(const CoeffSeq& gamma) {
  return gamma.size() <= 1 ? 0 : hard_block_of(gamma.size() - 1);
}

/// D_n = sum_{k=0}^{n} |f^(2^n + 2^k)|^2. Diagnostic data only.
inline std::vector<double> paley_diagnostic(const CoeffSeq& f, unsigned nmax) {
  if (nmax > kMaxDyadicLevel || f.degree() < (std::uint64_t{2} << nmax))
    throw Error(ErrorKind::TooShort, "paley_diagnostic needs deg f >= 2^{nmax+1}");
  std::vector<double> d(nmax + 1, 0.0);
  for (unsigned n = 0; n <= nmax; ++n) {
    double sum = 0.0;
    for (unsigned k = 0; k <= n; ++k) sum += std::norm(f[(std::size_t{1} << n) + (std::size_t{1} << k)]);
    d[n] = sum;
  }
  return d;
}

}  // namespace scottish_lab
