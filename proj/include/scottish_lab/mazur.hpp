#pragma once

// Antidiagonal averaging A, the Cesaro-normalized Cauchy product B, a
// constructive c_0 sequence whose dyadic L^1 profile grows, and a range
// diagnostic for images of A.

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "scottish_lab/core.hpp"
#include "scottish_lab/dyadic.hpp"
#include "scottish_lab/extremal.hpp"
#include "scottish_lab/fft.hpp"
#include "scottish_lab/parallel.hpp"
#include "scottish_lab/stats.hpp"

namespace scottish_lab {

namespace detail {

/// Double-double accumulator. Sums of up to ~2^50 equal addends stay exact,
/// and the FMA remainder step makes (m z) / m return z exactly.
struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  void add(double x) noexcept {
    const double s = hi + x;
    const double bb = s - hi;
    double e = (hi - (s - bb)) + (x - bb);
    e += lo;
    hi = s + e;
    lo = e - (hi - s);
  }

  double divided_by(double m) const noexcept {
    const double q = hi / m;
    const double r = std::fma(-q, m, hi);
    return q + (r + lo) / m;
  }
};

}  // namespace detail

/// z_n = (1/(n+1)) sum_{j+k=n} q_jk, n = 0..J+K-2. The divisor is n+1 even on
/// truncated antidiagonals (the zero-padded infinite formula). Antidiagonal
/// sums are accumulated in double-double, so A(hankel(z)) reproduces z
/// bit for bit.
inline CoeffSeq average_A(const DenseMatrix& q) {
  std::vector<detail::DoubleDouble> acc(q.rows() + q.cols() - 1);
  for (std::size_t j = 0; j < q.rows(); ++j)
    for (std::size_t k = 0; k < q.cols(); ++k) acc[j + k].add(q(j, k));
  std::vector<Complex> z(acc.size());
  for (std::size_t n = 0; n < z.size(); ++n) z[n] = acc[n].divided_by(static_cast<double>(n + 1));
  return CoeffSeq(std::move(z));
}

/// Above this many products bilinear_B switches to FFT convolution.
inline constexpr std::size_t kDirectConvolutionLimit = std::size_t{1} << 20;

/// z_n = (1/(n+1)) sum_{k=0}^{n} x_k y_{n-k}. Small inputs use a direct
/// double-double sum in the same order as average_A, so B(x, y) equals
/// A(x (x) y) bit for bit and constant inputs give exactly constant output.
/// Larger inputs go through FFT convolution (error ~ 1e-16 * n * max|x||y|).
inline CoeffSeq bilinear_B(const CoeffSeq& x, const CoeffSeq& y) {
  const bool real = x.is_real() && y.is_real();
  if (x.size() * y.size() <= kDirectConvolutionLimit) {
    std::vector<detail::DoubleDouble> re(x.size() + y.size() - 1), im(real ? 0 : re.size());
    for (std::size_t j = 0; j < x.size(); ++j)
      for (std::size_t k = 0; k < y.size(); ++k) {
        const Complex p = x[j] * y[k];
        re[j + k].add(p.real());
        if (!real) im[j + k].add(p.imag());
      }
    std::vector<Complex> z(re.size());
    for (std::size_t n = 0; n < z.size(); ++n) {
      const double m = static_cast<double>(n + 1);
      z[n] = {re[n].divided_by(m), real ? 0.0 : im[n].divided_by(m)};
    }
    return CoeffSeq(std::move(z));
  }
  std::vector<Complex> z = fft::convolve(x.coeffs(), y.coeffs());
  for (std::size_t n = 0; n < z.size(); ++n) {
    z[n] /= static_cast<double>(n + 1);
    if (real) z[n].imag(0.0);
  }
  return CoeffSeq(std::move(z));
}

// ---------------------------------------------------------------------------
// Problem-8 witness

enum class SignMode { Random, RudinShapiro };

inline const char* to_string(SignMode m) { return m == SignMode::Random ? "random" : "rudin_shapiro"; }

inline SignMode parse_sign_mode(const std::string& s) {
  if (s == "random") return SignMode::Random;
  if (s == "rudin_shapiro") return SignMode::RudinShapiro;
  throw Error(ErrorKind::InvalidRegime, "sign mode must be random or rudin_shapiro");
}

struct WitnessBlock {
  unsigned n = 0;
  /// Norms of the hard-block polynomial sum_{k in H_n} z_k z^k.
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
  double max_coeff = 0.0;
  /// Dyadic profile entry ||f_z * W_n||_1.
  double profile_l1 = 0.0;
};

struct WitnessReport {
  unsigned nmax = 0;
  Seed seed{};
  SignMode sign_mode = SignMode::Random;
  std::string decay_law = "1/(n+1)";
  unsigned fit_from = 0;
  std::vector<WitnessBlock> blocks;
  /// Fit of log2((n+1) ||f_z * W_n||_1) against n over [fit_from, nmax].
  LineFit fit;
  bool bounded_by_one = false;
  bool block_max_decreasing = false;
  /// Rudin-Shapiro mode: block L1 >= 2^{n/2} / ((n+1) sqrt 2) for every n.
  bool rs_lower_bound = false;
};

inline constexpr unsigned kWitness8MaxLevel = 20;

/// log2((n+1) * profile) points for the witness fit, recomputable from the
/// stored blocks.
inline LineFit witness_fit(const std::vector<WitnessBlock>& blocks, unsigned from) {
  std::vector<double> xs, ys;
  for (const auto& b : blocks) {
    if (b.n < from || b.profile_l1 <= 0.0) continue;
    xs.push_back(static_cast<double>(b.n));
    ys.push_back(std::log2(static_cast<double>(b.n + 1) * b.profile_l1));
  }
  return fit_line(xs, ys);
}

/// z_0 = 0 and z_k = sigma_k / (n+1) on H_n, n = 0..nmax, with signs drawn at
/// random or taken from the Rudin-Shapiro polynomial of the block's length.
/// The sequence tends to 0 while ||f_z * W_n||_1 grows like 2^{n/2}/(n+1).
inline std::pair<CoeffSeq, WitnessReport> problem8_witness(unsigned nmax, Seed seed, SignMode mode,
                                                           unsigned fit_from = 8,
                                                           unsigned oversample = kDefaultOversample) {
  if (nmax > kWitness8MaxLevel) throw Error(ErrorKind::InvalidRegime, "problem8_witness needs nmax <= 20");
  const std::size_t len = std::size_t{2} << nmax;
  std::vector<Complex> z(len);
  CounterRng rng(seed);
  for (unsigned n = 0; n <= nmax; ++n) {
    const BlockIndex b{n};
    const double eps = 1.0 / static_cast<double>(n + 1);
    if (mode == SignMode::RudinShapiro) {
      const auto signs = rudin_shapiro_signs(n);
      for (std::uint64_t k = b.hard_lo(); k <= b.hard_hi(); ++k) z[k] = eps * signs[k - b.hard_lo()];
    } else {
      for (std::uint64_t k = b.hard_lo(); k <= b.hard_hi(); ++k) z[k] = eps * rng.sign();
    }
  }
  CoeffSeq seq(std::move(z));

  WitnessReport rep;
  rep.nmax = nmax;
  rep.seed = seed;
  rep.sign_mode = mode;
  rep.fit_from = std::min(fit_from, nmax);
  const DyadicProfile prof = dyadic_profile(seq, 0.0, 1.0, nmax, oversample);
  rep.blocks.resize(nmax + 1);
  parallel_for(nmax + 1, [&](std::size_t i) {
    const auto n = static_cast<unsigned>(i);
    const BlockIndex b{n};
    // |sum_{H_n} z_k e^{ik t}| equals the modulus of the block shifted to 0.
    std::vector<Complex> block(seq.coeffs().begin() + static_cast<std::ptrdiff_t>(b.hard_lo()),
                               seq.coeffs().begin() + static_cast<std::ptrdiff_t>(b.hard_hi() + 1));
    double maxc = 0.0;
    for (const auto& c : block) maxc = std::max(maxc, std::abs(c));
    const CoeffSeq poly(std::move(block));
    WitnessBlock wb;
    wb.n = n;
    wb.l1 = lp_norm_circle(poly, 1.0, oversample).value;
    wb.l2 = lp_norm_circle(poly, 2.0, oversample).value;
    wb.linf = lp_norm_circle(poly, kInf, oversample).value;
    wb.max_coeff = maxc;
    wb.profile_l1 = prof.values[i];
    rep.blocks[i] = wb;
  });

  rep.fit = witness_fit(rep.blocks, rep.fit_from);
  rep.bounded_by_one = true;
  rep.block_max_decreasing = true;
  rep.rs_lower_bound = mode == SignMode::RudinShapiro;
  for (const auto& b : rep.blocks) {
    rep.bounded_by_one = rep.bounded_by_one && b.max_coeff <= 1.0;
    if (b.n > 0) rep.block_max_decreasing = rep.block_max_decreasing && b.max_coeff < rep.blocks[b.n - 1].max_coeff;
    if (mode == SignMode::RudinShapiro) {
      const double bound = std::exp2(b.n / 2.0) / (static_cast<double>(b.n + 1) * std::numbers::sqrt2);
      rep.rs_lower_bound = rep.rs_lower_bound && b.l1 >= bound;
    }
  }
  return {std::move(seq), std::move(rep)};
}

// ---------------------------------------------------------------------------
// Range diagnostic

enum class RangeClass { BoundedDecaying, BoundedFlat, Growing };

inline const char* to_string(RangeClass c) {
  switch (c) {
    case RangeClass::BoundedDecaying: return "bounded-decaying";
    case RangeClass::BoundedFlat: return "bounded-flat";
    case RangeClass::Growing: return "growing";
  }
  return "unknown";
}

struct RangeThresholds {
  /// Growing needs trailing log2-slope above this ...
  double growing_slope = 0.15;
  /// ... with RMS residual below this.
  double growing_residual = 0.2;
  /// Decaying: trailing slope below -decaying_slope.
  double decaying_slope = 0.15;
  /// Profiles whose trailing entries are all below this are decaying.
  double negligible = 1e-12;
  std::size_t trailing = 5;
};

struct RangeReport {
  Complex limit{};
  DyadicProfile profile;
  double sup = 0.0;
  LineFit trend;
  RangeClass classification = RangeClass::BoundedFlat;
  RangeThresholds thresholds;
};

/// Estimates d = lim z, takes the (s = 0, p = 1) profile of z - d and
/// classifies its trailing trend. "growing" certifies z is not of the form
/// {f^(n) + d} with f in b^0_{1,inf}; "bounded-*" is only consistent with it.
inline RangeReport range_diagnostic(const CoeffSeq& z, unsigned nmax, const RangeThresholds& th = {},
                                    unsigned oversample = kDefaultOversample) {
  RangeReport rep;
  rep.thresholds = th;
  rep.limit = limit_estimate(z);
  std::vector<Complex> centered(z.coeffs().begin(), z.coeffs().end());
  for (auto& c : centered) c -= rep.limit;
  rep.profile = dyadic_profile(CoeffSeq(std::move(centered)), 0.0, 1.0, nmax, oversample);
  for (double v : rep.profile.values) rep.sup = std::max(rep.sup, v);

  const std::size_t count = rep.profile.values.size();
  const std::size_t first = count > th.trailing ? count - th.trailing : 0;
  double tail_max = 0.0;
  for (std::size_t n = first; n < count; ++n) tail_max = std::max(tail_max, rep.profile.values[n]);
  if (tail_max <= th.negligible * std::max(1.0, std::abs(rep.limit))) {
    rep.classification = RangeClass::BoundedDecaying;
    return rep;
  }
  std::vector<double> xs, ys;
  const double floor = th.negligible * std::max(1.0, std::abs(rep.limit));
  for (std::size_t n = first; n < count; ++n) {
    xs.push_back(static_cast<double>(n));
    ys.push_back(std::log2(std::max(rep.profile.values[n], floor)));
  }
  rep.trend = fit_line(xs, ys);
  if (rep.trend.slope > th.growing_slope && rep.trend.residual < th.growing_residual)
    rep.classification = RangeClass::Growing;
  else if (rep.trend.slope < -th.decaying_slope)
    rep.classification = RangeClass::BoundedDecaying;
  else
    rep.classification = RangeClass::BoundedFlat;
  return rep;
}

}  // namespace scottish_lab
