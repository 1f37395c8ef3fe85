#pragma once

// Flat polynomials with prescribed coefficient moduli, their block assembly
// into a B^1_{inf,1} function, the Problem-88 witness sequence, weighted
// coefficient moments and the Psi regime function.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "scottish_lab/core.hpp"
#include "scottish_lab/dyadic.hpp"
#include "scottish_lab/fft.hpp"
#include "scottish_lab/parallel.hpp"
#include "scottish_lab/stats.hpp"

namespace scottish_lab {

inline constexpr unsigned kRudinShapiroMaxLevel = 20;

/// Coefficients of the Rudin-Shapiro pair (P_k, Q_k), length 2^k each:
/// P_{k+1} = P_k + z^{2^k} Q_k, Q_{k+1} = P_k - z^{2^k} Q_k, P_0 = Q_0 = 1.
inline std::pair<std::vector<int>, std::vector<int>> rudin_shapiro_pair(unsigned k) {
  if (k > kRudinShapiroMaxLevel) throw Error(ErrorKind::InvalidRegime, "rudin_shapiro needs k <= 20");
  std::vector<int> p{1}, q{1};
  for (unsigned level = 0; level < k; ++level) {
    const std::size_t half = p.size();
    std::vector<int> np(2 * half), nq(2 * half);
    for (std::size_t i = 0; i < half; ++i) {
      np[i] = p[i];
      np[half + i] = q[i];
      nq[i] = p[i];
      nq[half + i] = -q[i];
    }
    p = std::move(np);
    q = std::move(nq);
  }
  return {std::move(p), std::move(q)};
}

/// Sign pattern of P_k.
inline std::vector<int> rudin_shapiro_signs(unsigned k) { return rudin_shapiro_pair(k).first; }

/// |P_k|^2 + |Q_k|^2 = 2^{k+1} on the circle, so ||P_k||_inf <= sqrt(2) * 2^{k/2}.
inline std::pair<CoeffSeq, CoeffSeq> rudin_shapiro(unsigned k) {
  auto [p, q] = rudin_shapiro_pair(k);
  return {CoeffSeq(std::vector<double>(p.begin(), p.end())), CoeffSeq(std::vector<double>(q.begin(), q.end()))};
}

// ---------------------------------------------------------------------------
// Flat polynomials

enum class FlatMethod { Auto, RudinShapiro, RandomSigns, RandomPlusDescent };

inline const char* to_string(FlatMethod m) {
  switch (m) {
    case FlatMethod::Auto: return "auto";
    case FlatMethod::RudinShapiro: return "rudin_shapiro";
    case FlatMethod::RandomSigns: return "random_signs";
    case FlatMethod::RandomPlusDescent: return "random_plus_descent";
  }
  return "unknown";
}

inline FlatMethod parse_flat_method(const std::string& s) {
  for (auto m : {FlatMethod::Auto, FlatMethod::RudinShapiro, FlatMethod::RandomSigns, FlatMethod::RandomPlusDescent})
    if (s == to_string(m)) return m;
  throw Error(ErrorKind::InvalidRegime, "unknown flat-polynomial method '" + s + "'");
}

struct FlatPolyReport {
  std::vector<double> beta;
  CoeffSeq f;
  /// ||f||_inf (grid) / (sum beta_j^2)^{1/2}; 0 when beta vanishes.
  double ratio = 0.0;
  double sup_norm = 0.0;
  double l2_target = 0.0;
  FlatMethod method = FlatMethod::RandomSigns;
  Seed seed{};
  /// Accepted sign flips, and candidate flips evaluated.
  std::uint64_t descent_iterations = 0;
  std::uint64_t descent_evaluations = 0;
  std::size_t grid = 0;
};

namespace detail {

/// [start, start + 2^m) with start a multiple of 2^m and beta equal to one
/// positive constant there and zero elsewhere.
inline std::optional<std::pair<std::size_t, unsigned>> aligned_constant_support(const std::vector<double>& beta) {
  std::size_t first = beta.size(), last = 0;
  for (std::size_t j = 0; j < beta.size(); ++j)
    if (beta[j] > 0.0) {
      first = std::min(first, j);
      last = j;
    }
  if (first == beta.size()) return std::nullopt;
  const std::size_t len = last - first + 1;
  if (!std::has_single_bit(len) || first % len != 0) return std::nullopt;
  for (std::size_t j = first; j <= last; ++j)
    if (beta[j] != beta[first]) return std::nullopt;
  return std::pair{first, static_cast<unsigned>(std::countr_zero(len))};
}

/// Greedy single-sign-flip descent on the grid maximum of |f|. Each round
/// ranks flips by how much they lower |f| at the current argmax and accepts
/// the first of the top few that lowers the global grid maximum.
inline void sign_descent(std::vector<Complex>& coeffs, std::size_t grid, std::uint64_t budget,
                         FlatPolyReport& rep) {
  std::vector<Complex> values = fft::sample_on_circle(coeffs, grid);
  std::vector<Complex> roots(grid);
  for (std::size_t i = 0; i < grid; ++i)
    roots[i] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(grid));
  auto current_max = [&](std::size_t& arg) {
    double m = -1.0;
    for (std::size_t i = 0; i < grid; ++i)
      if (std::abs(values[i]) > m) {
        m = std::abs(values[i]);
        arg = i;
      }
    return m;
  };
  constexpr std::size_t kCandidates = 8;
  std::size_t arg = 0;
  double best = current_max(arg);
  std::vector<std::pair<double, std::size_t>> ranked;
  while (rep.descent_evaluations < budget) {
    ranked.clear();
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      if (coeffs[j] == Complex{}) continue;
      const double after = std::abs(values[arg] - 2.0 * coeffs[j] * roots[(arg * j) % grid]);
      if (after < best) ranked.emplace_back(after, j);
    }
    std::sort(ranked.begin(), ranked.end());
    if (ranked.size() > kCandidates) ranked.resize(kCandidates);
    bool accepted = false;
    for (const auto& [score, j] : ranked) {
      if (rep.descent_evaluations >= budget) break;
      ++rep.descent_evaluations;
      const Complex delta = -2.0 * coeffs[j];
      double m = 0.0;
      for (std::size_t i = 0; i < grid; ++i) m = std::max(m, std::abs(values[i] + delta * roots[(i * j) % grid]));
      if (m < best) {
        for (std::size_t i = 0; i < grid; ++i) values[i] += delta * roots[(i * j) % grid];
        coeffs[j] = -coeffs[j];
        ++rep.descent_iterations;
        best = current_max(arg);
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
}

}  // namespace detail

/// Polynomial with |f^(j)| = beta_j exactly and small sup norm. A positive
/// constant target on an aligned dyadic range gets Rudin-Shapiro signs
/// (ratio <= sqrt 2); other targets get random signs refined by sign-flip
/// descent. The ratio is measured, not assumed.
inline std::pair<CoeffSeq, FlatPolyReport> flat_polynomial(const CoeffSeq& beta_seq, Seed seed,
                                                           std::uint64_t descent_budget,
                                                           FlatMethod method = FlatMethod::Auto,
                                                           unsigned oversample = kDefaultOversample) {
  require_real(beta_seq, "flat_polynomial");
  std::vector<double> beta = beta_seq.real_part();
  for (double b : beta)
    if (b < 0.0) throw Error(ErrorKind::InvalidTarget, "flat_polynomial targets must be nonnegative");

  FlatPolyReport rep;
  rep.beta = beta;
  rep.seed = seed;
  double energy = 0.0;
  for (double b : beta) energy += b * b;
  rep.l2_target = std::sqrt(energy);

  const auto aligned = detail::aligned_constant_support(beta);
  if (method == FlatMethod::Auto) method = aligned ? FlatMethod::RudinShapiro : FlatMethod::RandomPlusDescent;
  if (method == FlatMethod::RudinShapiro && !aligned)
    throw Error(ErrorKind::InvalidTarget, "rudin_shapiro needs a constant target on an aligned dyadic range");

  std::vector<Complex> coeffs(beta.size());
  rep.grid = quadrature_grid(beta.size(), oversample);
  if (method == FlatMethod::RudinShapiro) {
    const auto [start, level] = *aligned;
    const auto signs = rudin_shapiro_signs(level);
    for (std::size_t i = 0; i < signs.size(); ++i) coeffs[start + i] = beta[start + i] * signs[i];
  } else {
    CounterRng rng(seed);
    for (std::size_t j = 0; j < beta.size(); ++j) coeffs[j] = beta[j] * rng.sign();
    if (method == FlatMethod::RandomPlusDescent && rep.l2_target > 0.0)
      detail::sign_descent(coeffs, rep.grid, descent_budget, rep);
  }
  rep.method = method;
  rep.f = CoeffSeq(std::move(coeffs));
  rep.sup_norm = lp_norm_circle(rep.f, kInf, oversample).value;
  rep.ratio = rep.l2_target > 0.0 ? rep.sup_norm / rep.l2_target : 0.0;
  return {rep.f, std::move(rep)};
}

// ---------------------------------------------------------------------------
// Block assembly

struct LkkBlock {
  unsigned n = 0;
  std::size_t lo = 0;
  std::size_t hi = 0;
  FlatMethod method = FlatMethod::RandomSigns;
  double ratio = 0.0;
  double sup_norm = 0.0;
  double l2_target = 0.0;
};

struct LkkReport {
  std::vector<LkkBlock> blocks;
  /// Largest per-block ratio (the measured flatness constant).
  double k_achieved = 0.0;
  double hard_block_bound = 0.0;
  BesovNorm besov;
  /// 4.5 * k_achieved * M(alpha).
  double chain_bound = 0.0;
  bool coefficient_fidelity = false;
  bool chain_holds = false;
  double tolerance = 1e-6;
};

/// phi = sum_n f_n with f_0 on {0, 1} and f_n on H_n, each a flat
/// polynomial matching alpha's moduli on its block. Disjoint spectra make
/// |phi^(k)| = alpha_k exact.
inline std::pair<CoeffSeq, LkkReport> lkk_assemble(const CoeffSeq& alpha_seq, Seed seed,
                                                   std::uint64_t descent_budget = 4096,
                                                   unsigned oversample = kDefaultOversample,
                                                   double tolerance = 1e-6) {
  require_real(alpha_seq, "lkk_assemble");
  const std::vector<double> alpha = alpha_seq.real_part();
  for (double a : alpha)
    if (a < 0.0) throw Error(ErrorKind::InvalidTarget, "lkk_assemble needs nonnegative alpha");

  const std::size_t len = std::max<std::size_t>(alpha.size(), 2);
  std::vector<std::pair<std::size_t, std::size_t>> ranges{{0, 1}};
  for (unsigned n = 1; (std::size_t{1} << n) < len; ++n)
    ranges.emplace_back(std::size_t{1} << n, (std::size_t{2} << n) - 1);

  LkkReport rep;
  rep.tolerance = tolerance;
  rep.blocks.resize(ranges.size());
  std::vector<std::vector<Complex>> parts(ranges.size());
  parallel_for(ranges.size(), [&](std::size_t n) {
    const auto [lo, hi] = ranges[n];
    std::vector<double> beta(hi - lo + 1, 0.0);
    for (std::size_t k = lo; k <= hi && k < alpha.size(); ++k) beta[k - lo] = alpha[k];
    auto [f, fr] = flat_polynomial(CoeffSeq(beta), derive_seed(seed, n), descent_budget, FlatMethod::Auto, oversample);
    parts[n].assign(f.coeffs().begin(), f.coeffs().end());
    rep.blocks[n] = {static_cast<unsigned>(n), lo, hi, fr.method, fr.ratio, fr.sup_norm, fr.l2_target};
  });

  std::vector<Complex> phi(len);
  for (std::size_t n = 0; n < ranges.size(); ++n)
    for (std::size_t i = 0; i < parts[n].size() && ranges[n].first + i < len; ++i)
      phi[ranges[n].first + i] = parts[n][i];
  CoeffSeq result(std::move(phi));

  for (const auto& b : rep.blocks) rep.k_achieved = std::max(rep.k_achieved, b.ratio);
  rep.coefficient_fidelity = true;
  for (std::size_t k = 0; k < result.size(); ++k)
    rep.coefficient_fidelity = rep.coefficient_fidelity && std::abs(result[k]) == (k < alpha.size() ? alpha[k] : 0.0);
  rep.hard_block_bound = hard_block_bound(alpha_seq, hard_block_cover(alpha_seq));
  rep.besov = besov_norm(result, 1.0, kInf, 1.0, covering_level(result) + 1, oversample);
  rep.chain_bound = 4.5 * rep.k_achieved * rep.hard_block_bound;
  rep.chain_holds = rep.besov.norm <= rep.chain_bound + tolerance;
  return {std::move(result), std::move(rep)};
}

// ---------------------------------------------------------------------------
// Problem-88 witness

struct Problem88Params {
  double t = 0.5;
  /// Exponent g = (1 + 1/t) / 2 of c_n = (n+1)^{-g}.
  double g = 1.5;
  unsigned nmax = 0;
  /// delta_n = 2^{-3n/2} (n+1)^{-g}, n = 0..nmax.
  std::vector<double> deltas;

  /// E_n = |H_n| delta_n^2 = 2^n delta_n^2.
  std::vector<double> block_energies() const {
    std::vector<double> e(deltas.size());
    for (std::size_t n = 0; n < deltas.size(); ++n) e[n] = std::exp2(static_cast<double>(n)) * deltas[n] * deltas[n];
    return e;
  }
};

inline constexpr unsigned kWitness88MaxMaterialized = 24;

/// Block law of the witness without materializing the sequence.
inline Problem88Params problem88_params(double t, unsigned nmax) {
  if (!(t > 0.0 && t < 1.0)) throw Error(ErrorKind::InvalidRegime, "problem88_witness needs 0 < t < 1");
  Problem88Params p;
  p.t = t;
  p.g = (1.0 + 1.0 / t) / 2.0;
  p.nmax = nmax;
  p.deltas.resize(nmax + 1);
  for (unsigned n = 0; n <= nmax; ++n)
    p.deltas[n] = std::exp2(-1.5 * n) * std::pow(static_cast<double>(n + 1), -p.g);
  return p;
}

/// alpha_0 = 0 and alpha_k = delta_n on H_n, n = 0..nmax (length 2^{nmax+1}).
inline std::pair<CoeffSeq, Problem88Params> problem88_witness(double t, unsigned nmax) {
  Problem88Params p = problem88_params(t, nmax);
  if (nmax > kWitness88MaxMaterialized)
    throw Error(ErrorKind::InvalidRegime, "problem88_witness materializes at most nmax = 24");
  std::vector<double> alpha(std::size_t{2} << nmax, 0.0);
  for (unsigned n = 0; n <= nmax; ++n) {
    const BlockIndex b{n};
    std::fill(alpha.begin() + static_cast<std::ptrdiff_t>(b.hard_lo()),
              alpha.begin() + static_cast<std::ptrdiff_t>(b.hard_hi() + 1), p.deltas[n]);
  }
  return {CoeffSeq(alpha), std::move(p)};
}

// ---------------------------------------------------------------------------
// Weighted coefficient moments

enum class MomentDiagnosis { Convergent, Divergent, Inconclusive };

inline const char* to_string(MomentDiagnosis d) {
  switch (d) {
    case MomentDiagnosis::Convergent: return "convergent";
    case MomentDiagnosis::Divergent: return "divergent";
    case MomentDiagnosis::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

struct MomentThresholds {
  double convergent_exponent = 0.05;
  double divergent_exponent = 0.1;
  /// Cauchy tail: the last increment relative to the partial sum.
  double cauchy_tail = 0.05;
};

struct WeightedMoment {
  double t = 1.0;
  double beta = 0.0;
  /// Checkpoints K_m = 2^m - 1 (sums over k < 2^m), plus the last index.
  std::vector<std::uint64_t> checkpoints;
  std::vector<double> partial_sums;
  double total = 0.0;
  /// Fit window in checkpoint exponents m (K = 2^m).
  unsigned window_from = 0;
  unsigned window_to = 0;
  /// Exponent c in S(2^m) ~ m^c, from the log-log slope of the dyadic
  /// increments against m (slope + 1). Empty when the increments vanish.
  std::optional<double> growth_exponent;
  double growth_residual = 0.0;
  /// Plain slope of log S against log K over the window.
  double loglog_slope = 0.0;
  MomentDiagnosis diagnosis = MomentDiagnosis::Inconclusive;
};

/// S_K = sum_{k <= K} |gamma_k|^t (1+k)^beta at dyadic checkpoints, with a
/// divergence diagnosis from fitted growth. `window` selects checkpoint
/// exponents [from, to]; the default is the last third.
inline WeightedMoment weighted_moment(const CoeffSeq& gamma, double t, double beta, std::uint64_t kmax,
                                      std::optional<std::pair<unsigned, unsigned>> window = {},
                                      const MomentThresholds& th = {}) {
  if (!(t > 0.0)) throw Error(ErrorKind::InvalidRegime, "weighted_moment needs t > 0");
  WeightedMoment wm;
  wm.t = t;
  wm.beta = beta;
  const std::uint64_t last = std::min<std::uint64_t>(kmax, gamma.degree());

  auto term = [&](std::uint64_t k) {
    const double a = std::abs(gamma[k]);
    if (a == 0.0) return 0.0;
    return std::pow(a, t) * std::pow(1.0 + static_cast<double>(k), beta);
  };

  // Block sums b_n over H_n keep the increments free of cancellation.
  std::vector<double> block_sums;
  const double head = term(0);
  for (unsigned n = 0; (std::uint64_t{1} << n) <= last; ++n) {
    const BlockIndex b{n};
    double s = 0.0;
    for (std::uint64_t k = b.hard_lo(); k <= std::min(b.hard_hi(), last); ++k) s += term(k);
    block_sums.push_back(s);
  }
  double running = head;
  wm.checkpoints.push_back(0);
  wm.partial_sums.push_back(running);
  for (std::size_t n = 0; n < block_sums.size(); ++n) {
    running += block_sums[n];
    const std::uint64_t k = std::min<std::uint64_t>((std::uint64_t{2} << n) - 1, last);
    wm.checkpoints.push_back(k);
    wm.partial_sums.push_back(running);
  }
  wm.total = running;

  // checkpoints[m] covers k < 2^m.
  const auto top = static_cast<unsigned>(wm.checkpoints.size() - 1);
  if (window) {
    wm.window_from = std::min(window->first, top);
    wm.window_to = std::min(window->second, top);
  } else {
    wm.window_to = top;
    wm.window_from = top - top / 3;
  }
  if (wm.window_to <= wm.window_from) {
    wm.diagnosis = MomentDiagnosis::Inconclusive;
    return wm;
  }

  // Increment at checkpoint m is the block sum b_{m-1}.
  std::vector<double> xs, ys, lk, ls;
  bool all_zero = true;
  for (unsigned m = wm.window_from + 1; m <= wm.window_to; ++m) {
    const double inc = block_sums[m - 1];
    if (inc > 0.0) {
      all_zero = false;
      xs.push_back(std::log(static_cast<double>(m)));
      ys.push_back(std::log(inc));
    }
  }
  for (unsigned m = wm.window_from; m <= wm.window_to; ++m) {
    if (wm.partial_sums[m] > 0.0) {
      lk.push_back(std::log(static_cast<double>(wm.checkpoints[m]) + 1.0));
      ls.push_back(std::log(wm.partial_sums[m]));
    }
  }
  wm.loglog_slope = fit_line(lk, ls).slope;

  const double s_last = wm.partial_sums[wm.window_to];
  const double inc_last = block_sums[wm.window_to - 1];
  const bool cauchy = s_last > 0.0 ? inc_last <= th.cauchy_tail * s_last : inc_last == 0.0;
  if (all_zero) {
    wm.diagnosis = MomentDiagnosis::Convergent;
    return wm;
  }
  if (xs.size() < 2) {
    wm.diagnosis = MomentDiagnosis::Inconclusive;
    return wm;
  }
  const LineFit fit = fit_line(xs, ys);
  wm.growth_exponent = fit.slope + 1.0;
  wm.growth_residual = fit.residual;
  if (*wm.growth_exponent < th.convergent_exponent && cauchy)
    wm.diagnosis = MomentDiagnosis::Convergent;
  else if (*wm.growth_exponent > th.divergent_exponent)
    wm.diagnosis = MomentDiagnosis::Divergent;
  else
    wm.diagnosis = MomentDiagnosis::Inconclusive;
  return wm;
}

/// Psi(t) = 3t/2 - 1 for 0 < t <= 2, t for t > 2.
inline double psi(double t) {
  if (!(t > 0.0)) throw Error(ErrorKind::InvalidRegime, "psi needs t > 0");
  return t <= 2.0 ? 1.5 * t - 1.0 : t;
}

}  // namespace scottish_lab
