#pragma once

// Verification suites. Each suite returns a list of checks (measured value,
// threshold, relation); thresholds can be overridden by "suite.key" names.

#include <boost/math/special_functions/zeta.hpp>

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "scottish_lab/core.hpp"
#include "scottish_lab/dyadic.hpp"
#include "scottish_lab/extremal.hpp"
#include "scottish_lab/mazur.hpp"
#include "scottish_lab/reference.hpp"
#include "scottish_lab/tensornorm.hpp"

namespace scottish_lab::verify {

enum class Relation { AtMost, AtLeast };

struct Check {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  Relation relation = Relation::AtMost;
  bool pass = false;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  std::vector<Check> checks;
  bool pass = true;
  double seconds = 0.0;
};

using Thresholds = std::map<std::string, double>;

inline const Thresholds& default_thresholds() {
  static const Thresholds t{
      {"kernel.l1_max", 1.5 + 1e-3},
      {"kernel.w0_tol", 1e-4},
      {"kernel.partition_tol", 1e-12},
      {"kernel.runtime_s", 60.0},
      {"besov.rel_tol", 1e-6},
      {"besov.abs_tol", 1e-6},
      {"injective.mismatches", 0.0},
      {"injective.search_rate", 0.95},
      {"hankel.mismatches", 0.0},
      {"hankel.ratio_lo", 0.5},
      {"hankel.ratio_hi", 2.0},
      {"theorem-re.constant", 5.0},
      {"witness88.tail_factor", 2.0},
      {"witness88.exponent_lo", 0.15},
      {"witness88.exponent_hi", 0.35},
      {"witness88.mismatches", 0.0},
      {"witness88.lkk_tol", 1e-6},
      {"witness8.rs_ratio", 1.0},
      {"witness8.growing", 1.0},
      {"witness8.slope_lo", 0.35},
      {"witness8.slope_hi", 0.65},
      {"witness8.not_growing", 95.0},
      {"duality.tol", 1e-9},
      {"duality.rank_one_tol", 1e-12},
      {"mazur.mismatches", 0.0},
      {"mazur.bilinear_tol", 1e-12},
      {"mazur.flatness_tol", 1e-9},
  };
  return t;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"kernel",    "besov",     "injective", "hankel", "theorem-re",
                                              "witness88", "witness8", "duality",   "mazur"};
  return names;
}

/// Defaults with overrides applied; unknown keys are rejected.
inline Thresholds merge_thresholds(const Thresholds& overrides) {
  Thresholds t = default_thresholds();
  for (const auto& [k, v] : overrides) {
    if (!t.contains(k)) throw Error(ErrorKind::InvalidRegime, "unknown threshold '" + k + "'");
    t[k] = v;
  }
  return t;
}

namespace detail {

class Recorder {
 public:
  Recorder(std::string suite, const Thresholds& th) : th_(th) { result_.suite = std::move(suite); }

  double threshold(const std::string& key) const { return th_.at(result_.suite + "." + key); }

  void at_most(std::string name, double measured, const std::string& key, std::string detail = {}) {
    add(std::move(name), measured, threshold(key), Relation::AtMost, std::move(detail));
  }
  void at_least(std::string name, double measured, const std::string& key, std::string detail = {}) {
    add(std::move(name), measured, threshold(key), Relation::AtLeast, std::move(detail));
  }

  SuiteResult finish(double seconds) {
    result_.seconds = seconds;
    return std::move(result_);
  }

 private:
  void add(std::string name, double measured, double threshold, Relation rel, std::string detail) {
    Check c{std::move(name), measured, threshold, rel, false, std::move(detail)};
    c.pass = rel == Relation::AtMost ? measured <= threshold : measured >= threshold;
    result_.pass = result_.pass && c.pass;
    result_.checks.push_back(std::move(c));
  }

  const Thresholds& th_;
  SuiteResult result_;
};

inline DenseMatrix random_matrix(CounterRng& rng, std::size_t rows, std::size_t cols) {
  std::vector<double> d(rows * cols);
  for (auto& v : d) v = rng.uniform(-1.0, 1.0);
  return DenseMatrix(rows, cols, std::move(d));
}

inline DenseMatrix random_integer_matrix(CounterRng& rng, std::size_t rows, std::size_t cols) {
  std::vector<double> d(rows * cols);
  for (auto& v : d) v = static_cast<double>(rng.below(19)) - 9.0;
  return DenseMatrix(rows, cols, std::move(d));
}

/// Nonnegative test sequences for the chain property, cycling through
/// several shapes so both flat and spiky blocks occur.
inline CoeffSeq chain_family(CounterRng& rng, std::size_t index) {
  const std::size_t len = 1 + rng.below(std::size_t{1} << 12);
  std::vector<double> g(len, 0.0);
  switch (index % 5) {
    case 0:
      for (auto& v : g) v = rng.uniform();
      break;
    case 1:
      for (auto& v : g)
        if (rng.uniform() < 0.05) v = rng.uniform(0.0, 10.0);
      break;
    case 2: {
      const double decay = rng.uniform(0.5, 2.5);
      for (std::size_t k = 0; k < len; ++k) g[k] = rng.uniform() * std::pow(1.0 + static_cast<double>(k), -decay);
      break;
    }
    case 3:
      for (std::size_t k = 1; k < len; k <<= 1) g[k] = rng.uniform(0.0, 5.0);
      break;
    default: {
      for (unsigned n = 0; (std::size_t{1} << n) < len; ++n) {
        const BlockIndex b{n};
        const double c = rng.uniform() * std::exp2(-1.5 * n);
        for (std::uint64_t k = b.hard_lo(); k <= b.hard_hi() && k < len; ++k) g[k] = c;
      }
      g[0] = rng.uniform();
    }
  }
  return CoeffSeq(std::move(g));
}

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace detail

inline SuiteResult suite_kernel(Seed, const Thresholds& th) {
  const auto start = std::chrono::steady_clock::now();
  detail::Recorder rec("kernel", th);
  double worst = 0.0;
  for (unsigned n = 0; n <= 16; ++n) worst = std::max(worst, lp_norm_circle(wn_coeffs(n), 1.0).value);
  rec.at_most("max_n<=16 ||W_n||_1", worst, "l1_max");

  // |1 + e^{it}| has a kink at t = pi, so W_0 gets a fine grid.
  const double w0 = lp_norm_circle(wn_coeffs(0), 1.0, 1u << 16).value;
  rec.at_most("| ||W_0||_1 - 4/pi |", std::abs(w0 - 4.0 / std::numbers::pi), "w0_tol");

  constexpr std::uint64_t kTop = std::uint64_t{1} << 17;
  double dev = 0.0;
  for (std::uint64_t k = 0; k <= kTop; ++k) {
    double sum = 0.0;
    for (unsigned n = 0; n <= 18; ++n) sum += wn_multiplier(n, k);
    dev = std::max(dev, std::abs(sum - 1.0));
  }
  rec.at_most("max_k<=2^17 |sum_n W_n^(k) - 1|", dev, "partition_tol");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  rec.at_most("runtime seconds", secs, "runtime_s");
  return rec.finish(secs);
}

inline SuiteResult suite_besov(Seed, const Thresholds& th) {
  detail::Recorder rec("besov", th);
  double worst = 0.0;
  for (unsigned j = 0; j <= 14; ++j) {
    const auto f = CoeffSeq::monomial(std::size_t{1} << j);
    const double expect = std::exp2(j);
    const double got = besov_norm(f, 1.0, kInf, 1.0, covering_level(f) + 1).norm;
    worst = std::max(worst, std::abs(got - expect) / expect);
  }
  rec.at_most("max_j<=14 |B(z^{2^j}) - 2^j| / 2^j", worst, "rel_tol");
  std::vector<double> c(9, 0.0);
  c[2] = c[8] = 1.0;
  const double mixed = besov_norm(CoeffSeq(c), 1.0, kInf, 1.0, 4).norm;
  rec.at_most("|B(z^2 + z^8) - 10|", std::abs(mixed - 10.0), "abs_tol");
  return rec.finish(0.0);
}

inline SuiteResult suite_injective(Seed seed, const Thresholds& th) {
  detail::Recorder rec("injective", th);
  constexpr std::size_t kCases = 200;
  struct Outcome {
    bool exact_match = false;
    bool search_match = false;
  };
  const auto outcomes = parallel_map<Outcome>(kCases, [&](std::size_t i) {
    CounterRng rng(derive_seed(seed, i));
    const std::size_t rows = 1 + rng.below(8), cols = 1 + rng.below(8);
    const DenseMatrix q = detail::random_integer_matrix(rng, rows, cols);
    const double exact = injective_norm_exact(q).value;
    const double search =
        injective_norm_search(q, std::uint64_t{4} << rows, derive_seed(seed, kCases + i)).value;
    return Outcome{exact == reference::injective_norm_brute(q), search == exact};
  });
  double mismatches = 0.0, hits = 0.0;
  for (const auto& o : outcomes) {
    mismatches += o.exact_match ? 0.0 : 1.0;
    hits += o.search_match ? 1.0 : 0.0;
  }
  rec.at_most("exact vs brute force mismatches (200 cases)", mismatches, "mismatches");
  rec.at_least("search match rate, budget 4*2^J", hits / kCases, "search_rate");
  return rec.finish(0.0);
}

inline SuiteResult suite_hankel(Seed, const Thresholds& th) {
  detail::Recorder rec("hankel", th);
  double mismatches = 0.0, lo = kInf, hi = 0.0;
  for (std::size_t m = 0; m <= 16; ++m) {
    const auto e = CoeffSeq::monomial(m);
    if (injective_norm_exact(hankel_matrix(e, m + 1)).value != static_cast<double>(m + 1)) mismatches += 1.0;
    const double ratio = besov_norm(e, 1.0, kInf, 1.0, covering_level(e) + 1).norm / static_cast<double>(m + 1);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  rec.at_most("m<=16: ||hankel(e_m)||_v != m+1", mismatches, "mismatches");
  rec.at_least("min B(z^m)/(m+1)", lo, "ratio_lo");
  rec.at_most("max B(z^m)/(m+1)", hi, "ratio_hi");
  return rec.finish(0.0);
}

inline SuiteResult suite_theorem_re(Seed seed, const Thresholds& th) {
  detail::Recorder rec("theorem-re", th);
  constexpr std::size_t kCases = 1000;
  constexpr double kTs[] = {1.0, 1.1, 1.25, 1.33};
  const auto ratios = parallel_map<double>(kCases, [&](std::size_t i) {
    CounterRng rng(derive_seed(seed, i));
    const CoeffSeq g = detail::chain_family(rng, i);
    const double t = kTs[i % 4];
    const double m = hard_block_bound(g, hard_block_cover(g));
    const double lhs = weighted_moment(g, t, 1.5 * t - 1.0, g.degree()).total;
    return m > 0.0 ? lhs / std::pow(m, t) : 0.0;
  });
  double worst = 0.0;
  for (double r : ratios) worst = std::max(worst, r);
  rec.at_most("max moment / M^t over 1000 cases", worst, "constant");
  return rec.finish(0.0);
}

inline SuiteResult suite_witness88(Seed seed, const Thresholds& th) {
  detail::Recorder rec("witness88", th);
  const Problem88Params p = problem88_params(0.5, 30);
  const auto terms = hard_block_terms(p.block_energies());
  const double total = boost::math::zeta(p.g);
  double partial = 0.0, worst = 1.0;
  for (unsigned n = 0; n <= 30; ++n) {
    partial += terms[n];
    const double tail = total - partial;
    const double estimate = std::pow(n + 1.0, 1.0 - p.g) / (p.g - 1.0);
    worst = std::max({worst, tail / estimate, estimate / tail});
  }
  rec.at_most("max_n<=30 tail/integral factor", worst, "tail_factor");

  const auto [alpha, params] = problem88_witness(0.5, 21);
  const WeightedMoment wm =
      weighted_moment(alpha, 0.5, psi(0.5), alpha.degree(), std::pair<unsigned, unsigned>{12, 22});
  const double expo = wm.growth_exponent.value_or(0.0);
  rec.at_least("growth exponent (K = 2^12..2^22)", expo, "exponent_lo", to_string(wm.diagnosis));
  rec.at_most("growth exponent (K = 2^12..2^22)", expo, "exponent_hi", to_string(wm.diagnosis));

  const auto [a14, p14] = problem88_witness(0.5, 14);
  const auto [phi, lkk] = lkk_assemble(a14, derive_seed(seed, 88));
  double fidelity = 0.0;
  for (std::size_t k = 0; k < a14.size(); ++k)
    if (std::abs(phi[k]) != a14[k].real()) fidelity += 1.0;
  rec.at_most("lkk |phi^(k)| != alpha_k count", fidelity, "mismatches");
  rec.at_most("lkk besov - 4.5 K M", lkk.besov.norm - lkk.chain_bound, "lkk_tol",
              "K=" + detail::fmt(lkk.k_achieved) + " M=" + detail::fmt(lkk.hard_block_bound));
  return rec.finish(0.0);
}

inline SuiteResult suite_witness8(Seed seed, const Thresholds& th) {
  detail::Recorder rec("witness8", th);
  const auto [rs_seq, rs] = problem8_witness(16, seed, SignMode::RudinShapiro);
  double ratio = kInf;
  for (unsigned n = 8; n <= 16; ++n) {
    const double bound = std::exp2(n / 2.0) / ((n + 1.0) * std::numbers::sqrt2);
    ratio = std::min(ratio, rs.blocks[n].l1 / bound);
  }
  rec.at_least("min_{8<=n<=16} block L1 / RS bound", ratio, "rs_ratio");

  double slo = kInf, shi = -kInf;
  for (std::uint64_t s = 0; s < 5; ++s) {
    const double slope = problem8_witness(16, derive_seed(seed, s), SignMode::Random).second.fit.slope;
    slo = std::min(slo, slope);
    shi = std::max(shi, slope);
  }
  rec.at_least("min random-mode exponent (5 seeds)", slo, "slope_lo");
  rec.at_most("max random-mode exponent (5 seeds)", shi, "slope_hi");

  const RangeReport wr = range_diagnostic(rs_seq, 16);
  rec.at_least("witness classified growing", wr.classification == RangeClass::Growing ? 1.0 : 0.0,
               "growing", to_string(wr.classification));

  constexpr std::size_t kPairs = 100, kLen = 4096;
  const auto growing = parallel_map<int>(kPairs, [&](std::size_t i) {
    CounterRng rng(derive_seed(seed, 1000 + i));
    std::vector<double> x(kLen), y(kLen);
    for (std::size_t k = 0; k < kLen; ++k) x[k] = 1.0 + rng.uniform(-1.0, 1.0) / (k + 1.0);
    for (std::size_t k = 0; k < kLen; ++k) y[k] = 1.0 + rng.uniform(-1.0, 1.0) / (k + 1.0);
    const CoeffSeq z = bilinear_B(CoeffSeq(x), CoeffSeq(y)).truncated(kLen);
    return range_diagnostic(z, 11).classification == RangeClass::Growing ? 1 : 0;
  });
  double not_growing = 0.0;
  for (int g : growing) not_growing += g ? 0.0 : 1.0;
  rec.at_least("B images not growing (of 100)", not_growing, "not_growing");
  return rec.finish(0.0);
}

inline SuiteResult suite_duality(Seed seed, const Thresholds& th) {
  detail::Recorder rec("duality", th);
  const auto excess = parallel_map<double>(100, [&](std::size_t i) {
    CounterRng rng(derive_seed(seed, i));
    const std::size_t rows = 1 + rng.below(8), cols = 1 + rng.below(8);
    const DenseMatrix a = detail::random_matrix(rng, rows, cols);
    const DenseMatrix q = detail::random_matrix(rng, rows, cols);
    BracketOptions opt;
    opt.seed = derive_seed(seed, 500 + i);
    return std::abs(pairing(a, q)) - projective_bracket(a, opt).upper * injective_norm_exact(q).value;
  });
  double worst = -kInf;
  for (double e : excess) worst = std::max(worst, e);
  rec.at_most("max |<A,Q>| - upper(A) ||Q||_v", worst, "tol");

  const auto gaps = parallel_map<double>(50, [&](std::size_t i) {
    CounterRng rng(derive_seed(seed, 2000 + i));
    const std::size_t rows = 1 + rng.below(8), cols = 1 + rng.below(8);
    std::vector<double> a(rows), b(cols);
    double amax = 0.0, bmax = 0.0;
    for (auto& v : a) amax = std::max(amax, std::abs(v = rng.uniform(-1.0, 1.0)));
    for (auto& v : b) bmax = std::max(bmax, std::abs(v = rng.uniform(-1.0, 1.0)));
    const double v = amax * bmax;
    const NormBracket br = projective_bracket(outer(std::span<const double>(a), std::span<const double>(b)));
    return std::max(std::abs(br.upper - v), std::abs(br.lower - v)) / v;
  });
  double gap = 0.0;
  for (double g : gaps) gap = std::max(gap, g);
  rec.at_most("rank-one: max |bracket - |a|_inf |b|_inf| / v", gap, "rank_one_tol");
  return rec.finish(0.0);
}

inline SuiteResult suite_mazur(Seed seed, const Thresholds& th) {
  detail::Recorder rec("mazur", th);
  double mismatches = 0.0, bil = 0.0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    CounterRng rng(derive_seed(seed, s));
    const std::size_t n = 1 + rng.below(64);
    std::vector<double> z(2 * n - 1);
    for (auto& v : z) v = rng.uniform(-1.0, 1.0);
    const CoeffSeq zs(z);
    const CoeffSeq back = average_A(hankel_matrix(zs, n));
    // Antidiagonals n >= N are truncated, so the identity covers 0..N-1.
    for (std::size_t k = 0; k < n; ++k)
      if (back[k].real() != z[k]) mismatches += 1.0;

    std::vector<double> x(n), y(1 + rng.below(64));
    for (auto& v : x) v = rng.uniform(-1.0, 1.0);
    for (auto& v : y) v = rng.uniform(-1.0, 1.0);
    const CoeffSeq b = bilinear_B(CoeffSeq(x), CoeffSeq(y));
    const CoeffSeq a = average_A(outer(CoeffSeq(x), CoeffSeq(y)));
    for (std::size_t k = 0; k < std::max(a.size(), b.size()); ++k) bil = std::max(bil, std::abs(a[k] - b[k]));
  }
  rec.at_most("A(hankel(z, N)) != z on 0..N-1 (100 seeds)", mismatches, "mismatches");
  rec.at_most("max |B(x,y) - A(x (x) y)|", bil, "bilinear_tol");

  double flat = 0.0;
  for (unsigned k = 0; k <= 12; ++k) {
    const auto [p, q] = rudin_shapiro(k);
    const std::size_t grid = fft::next_pow2(8 * p.size());
    const auto pv = fft::sample_on_circle(p.coeffs(), grid);
    const auto qv = fft::sample_on_circle(q.coeffs(), grid);
    const double target = std::exp2(k + 1.0);
    for (std::size_t i = 0; i < grid; ++i)
      flat = std::max(flat, std::abs(std::norm(pv[i]) + std::norm(qv[i]) - target) / target);
  }
  rec.at_most("RS flatness max relative deviation, k<=12", flat, "flatness_tol");
  return rec.finish(0.0);
}

inline SuiteResult run_suite(const std::string& name, Seed seed, const Thresholds& overrides = {}) {
  static const std::map<std::string, std::function<SuiteResult(Seed, const Thresholds&)>> table{
      {"kernel", suite_kernel},       {"besov", suite_besov},         {"injective", suite_injective},
      {"hankel", suite_hankel},       {"theorem-re", suite_theorem_re}, {"witness88", suite_witness88},
      {"witness8", suite_witness8},   {"duality", suite_duality},     {"mazur", suite_mazur}};
  const auto it = table.find(name);
  if (it == table.end()) throw Error(ErrorKind::InvalidRegime, "unknown verify suite '" + name + "'");
  const Thresholds th = merge_thresholds(overrides);
  const auto start = std::chrono::steady_clock::now();
  SuiteResult r = it->second(seed, th);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace scottish_lab::verify
