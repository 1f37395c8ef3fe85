#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "scottish_lab/dyadic.hpp"

using namespace scottish_lab;

namespace {

// ||W_n||_1 for n >= 1 (independent numpy quadrature at G = 2^16 and 2^20;
// the value does not depend on n).
constexpr double kWnL1 = 1.0635444099733649;

std::vector<double> nonzero_map(const CoeffSeq& s) {
  return s.real_part();
}

}  // namespace

TEST(Kernel, W0) { EXPECT_EQ(wn_coeffs(0), CoeffSeq({1.0, 1.0})); }

TEST(Kernel, W1) { EXPECT_EQ(wn_coeffs(1), CoeffSeq({0.0, 0.0, 1.0, 0.5})); }

TEST(Kernel, W2) {
  EXPECT_EQ(nonzero_map(wn_coeffs(2)), (std::vector<double>{0, 0, 0, 0.5, 1, 0.75, 0.5, 0.25}));
}

TEST(Kernel, PeakAndSupport) {
  for (unsigned n = 1; n <= 20; ++n) {
    const std::uint64_t lo = std::uint64_t{1} << (n - 1), hi = std::uint64_t{2} << n;
    EXPECT_EQ(wn_multiplier(n, std::uint64_t{1} << n), 1.0);
    EXPECT_EQ(wn_multiplier(n, lo), 0.0);
    EXPECT_EQ(wn_multiplier(n, hi), 0.0);
    EXPECT_EQ(wn_multiplier(n, hi + 5), 0.0);
    EXPECT_GT(wn_multiplier(n, lo + 1), 0.0);
  }
}

TEST(Kernel, PartitionOfUnity) {
  for (std::uint64_t k = 0; k <= (std::uint64_t{1} << 17); ++k) {
    double sum = 0.0;
    for (unsigned n = 0; n <= 18; ++n) sum += wn_multiplier(n, k);
    ASSERT_EQ(sum, 1.0) << k;
  }
}

TEST(Kernel, L1Bound) {
  for (unsigned n = 0; n <= 16; ++n) {
    const LpNorm l = lp_norm_circle(wn_coeffs(n), 1.0);
    EXPECT_LE(l.value, 1.5 + 1e-3) << n;
  }
}

TEST(Quadrature, MonomialsAreUnimodular) {
  for (std::size_t m : {0u, 1u, 5u, 64u, 1000u})
    for (double p : {1.0, 1.5, 2.0, 3.0, kInf}) EXPECT_NEAR(lp_norm_circle(CoeffSeq::monomial(m), p).value, 1.0, 1e-12);
}

TEST(Quadrature, W0IsFourOverPi) {
  const LpNorm fine = lp_norm_circle(wn_coeffs(0), 1.0, 1u << 14);
  EXPECT_NEAR(fine.value, 4.0 / std::numbers::pi, 1e-6);
  const LpNorm coarse = lp_norm_circle(wn_coeffs(0), 1.0);
  EXPECT_LE(std::abs(coarse.value - 4.0 / std::numbers::pi), coarse.error_bound);
}

TEST(Quadrature, W2AgainstOracle) {
  const LpNorm def = lp_norm_circle(wn_coeffs(2), 1.0);
  EXPECT_GT(def.value, 1.0);
  EXPECT_LE(def.value, 1.5);
  EXPECT_LE(std::abs(def.value - kWnL1), def.error_bound);
  EXPECT_NEAR(lp_norm_circle(wn_coeffs(2), 1.0, 1u << 13).value, kWnL1, 1e-9);
  EXPECT_NEAR(lp_norm_circle(wn_coeffs(7), 1.0, 64).value, kWnL1, 1e-9);
}

TEST(Quadrature, GridSize) {
  EXPECT_EQ(lp_norm_circle(CoeffSeq{1.0, 2.0, 3.0}, 2.0).grid, 32u);
  EXPECT_EQ(lp_norm_circle(CoeffSeq{1.0, 2.0, 3.0}, 2.0, 2).grid, 8u);
}

TEST(Quadrature, L2IsParseval) {
  for (std::uint64_t i = 0; i < 50; ++i) {
    auto r = gen::rng_for(11, i);
    const CoeffSeq f = gen::complex_seq(r, gen::size_in(r, 1, 300));
    double e = 0.0;
    for (const auto& c : f.coeffs()) e += std::norm(c);
    EXPECT_NEAR(lp_norm_circle(f, 2.0).value, std::sqrt(e), 1e-12 * (1.0 + std::sqrt(e)));
  }
}

TEST(Quadrature, Errors) {
  try {
    lp_norm_circle(CoeffSeq{1.0}, 0.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidExponent);
  }
  EXPECT_THROW(lp_norm_circle(CoeffSeq{1.0}, 2.0, 1), Error);
  EXPECT_THROW(besov_norm(CoeffSeq{1.0}, 0.0, 1.0, 0.5, 2), Error);
}

TEST(QuadratureProperty, DoublingOversampleStaysWithinBound) {
  for (std::uint64_t i = 0; i < 60; ++i) {
    auto r = gen::rng_for(12, i);
    const CoeffSeq f = gen::complex_seq(r, gen::size_in(r, 2, 200));
    for (double p : {1.0, 2.0, 3.5, kInf}) {
      const LpNorm a = lp_norm_circle(f, p, 8), b = lp_norm_circle(f, p, 16);
      ASSERT_LE(std::abs(a.value - b.value), a.error_bound) << i << " p=" << p;
    }
  }
}

TEST(Profile, SingleBlockMonomial) {
  for (unsigned j = 0; j <= 12; ++j)
    for (double s : {0.0, 0.5, 1.0})
      for (double p : {1.0, 2.0, kInf}) {
        const DyadicProfile pr = dyadic_profile(CoeffSeq::monomial(std::size_t{1} << j), s, p, j + 2);
        for (unsigned n = 0; n <= j + 2; ++n)
          EXPECT_NEAR(pr.values[n], n == j ? std::exp2(j * s) : 0.0, 1e-12 * std::exp2(j * s)) << j << " " << n;
      }
}

TEST(Profile, Zero) {
  const DyadicProfile pr = dyadic_profile(CoeffSeq::zeros(100), 1.0, 1.0, 8);
  for (double v : pr.values) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(besov_norm(CoeffSeq::zeros(100), 1.0, kInf, 1.0, 8).norm, 0.0);
}

TEST(Profile, AllOnesGivesKernelNorms) {
  const DyadicProfile pr = dyadic_profile(CoeffSeq(std::vector<double>(1025, 1.0)), 0.0, 1.0, 9);
  // S_n is inside [0, 2^10] for n <= 9.
  for (unsigned n = 1; n <= 9; ++n) {
    EXPECT_LE(pr.values[n], 1.5);
    EXPECT_LE(std::abs(pr.values[n] - kWnL1), pr.error_bounds[n]) << n;
  }
  EXPECT_FALSE(pr.truncated);
}

TEST(Profile, TruncationFlag) {
  const CoeffSeq f = CoeffSeq::monomial(100);
  EXPECT_TRUE(dyadic_profile(f, 0.0, 1.0, 5).truncated);
  EXPECT_FALSE(dyadic_profile(f, 0.0, 1.0, 6).truncated);
  EXPECT_TRUE(besov_norm(f, 0.0, 1.0, 1.0, 5).truncated);
}

TEST(ProfileProperty, Reconstruction) {
  for (std::uint64_t i = 0; i < 40; ++i) {
    auto r = gen::rng_for(13, i);
    const CoeffSeq f = gen::complex_seq(r, gen::size_in(r, 1, 500));
    const unsigned nmax = covering_level(f);
    std::vector<Complex> sum(f.size());
    std::vector<Complex> part;
    for (unsigned n = 0; n <= nmax; ++n) {
      block_component(f, n, part);
      for (std::size_t k = 0; k < std::min(part.size(), sum.size()); ++k) sum[k] += part[k];
    }
    for (std::size_t k = 0; k < f.size(); ++k) ASSERT_LE(std::abs(sum[k] - f[k]), 1e-15 * (1 + std::abs(f[k])));
  }
}

TEST(ProfileProperty, NonnegativeAndScaling) {
  for (std::uint64_t i = 0; i < 40; ++i) {
    auto r = gen::rng_for(14, i);
    const CoeffSeq f = gen::complex_seq(r, gen::size_in(r, 1, 400));
    const Complex c{r.uniform(-3.0, 3.0), r.uniform(-3.0, 3.0)};
    const unsigned nmax = covering_level(f) + 1;
    const BesovNorm a = besov_norm(f, 1.0, kInf, 1.0, nmax);
    const BesovNorm b = besov_norm(f.scaled(c), 1.0, kInf, 1.0, nmax);
    for (double v : a.profile.values) ASSERT_GE(v, 0.0);
    ASSERT_NEAR(b.norm, std::abs(c) * a.norm, 1e-12 * (1 + b.norm));
    const std::vector<double> e = hard_block_energies(f, nmax);
    ASSERT_NEAR(hard_block_bound(f.scaled(c), nmax), std::abs(c) * hard_block_bound(f, nmax),
                1e-12 * (1 + std::abs(c) * hard_block_bound(f, nmax)));
  }
}

TEST(Besov, MonomialNorms) {
  for (unsigned j = 0; j <= 14; ++j) {
    const CoeffSeq f = CoeffSeq::monomial(std::size_t{1} << j);
    EXPECT_NEAR(besov_norm(f, 1.0, kInf, 1.0, j + 1).norm, std::exp2(j), 1e-6 * std::exp2(j));
    EXPECT_NEAR(besov_norm(f, 0.5, 2.0, 3.0, j + 1).norm, std::exp2(0.5 * j), 1e-9 * std::exp2(j));
  }
}

TEST(Besov, TwoMonomials) {
  std::vector<double> c(9, 0.0);
  c[2] = c[8] = 1.0;
  const BesovNorm b = besov_norm(CoeffSeq(c), 1.0, kInf, 1.0, 4);
  EXPECT_NEAR(b.norm, 10.0, 1e-6);
  EXPECT_NEAR(b.profile.values[1], 2.0, 1e-12);
  EXPECT_EQ(b.profile.values[2], 0.0);
  EXPECT_NEAR(b.profile.values[3], 8.0, 1e-12);
}

TEST(Besov, QInfinityIsMax) {
  std::vector<double> c(9, 0.0);
  c[2] = c[8] = 1.0;
  EXPECT_NEAR(besov_norm(CoeffSeq(c), 1.0, kInf, kInf, 4).norm, 8.0, 1e-12);
  EXPECT_NEAR(besov_norm(CoeffSeq(c), 1.0, kInf, 2.0, 4).norm, std::sqrt(68.0), 1e-12);
}

TEST(HardBlock, Examples) {
  EXPECT_EQ(hard_block_bound(CoeffSeq{1.0}, 4), 1.0);
  for (unsigned j = 0; j <= 12; ++j)
    EXPECT_DOUBLE_EQ(hard_block_bound(CoeffSeq::monomial(std::size_t{1} << j), j + 1), std::exp2(j));
  // Block sums of |gamma|^2: H_1 = {2, 3}.
  EXPECT_DOUBLE_EQ(hard_block_bound(CoeffSeq{0.0, 0.0, 3.0, 4.0}, 1), 10.0);
  EXPECT_EQ(hard_block_cover(CoeffSeq{0.0, 0.0, 3.0, 4.0}), 1u);
}

TEST(HardBlock, TermsFromEnergies) {
  const std::vector<double> e{1.0, 4.0, 9.0};
  EXPECT_EQ(hard_block_terms(e), (std::vector<double>{1.0, 4.0, 12.0}));
  EXPECT_EQ(hard_block_bound_from_energies(2.0, e), 19.0);
}

TEST(Paley, AllOnes) {
  const auto d = paley_diagnostic(CoeffSeq(std::vector<double>(257, 1.0)), 7);
  for (unsigned n = 0; n <= 7; ++n) EXPECT_EQ(d[n], n + 1.0);
}

TEST(Paley, Monomial) {
  for (unsigned j = 1; j <= 8; ++j) {
    const auto d = paley_diagnostic(CoeffSeq::monomial(std::size_t{1} << j).truncated(1025), 9);
    for (unsigned n = 0; n <= 9; ++n) EXPECT_EQ(d[n], n + 1 == j ? 1.0 : 0.0) << j << " " << n;
  }
}

TEST(Paley, ZeroAndTooShort) {
  for (double v : paley_diagnostic(CoeffSeq::zeros(64), 4)) EXPECT_EQ(v, 0.0);
  try {
    paley_diagnostic(CoeffSeq::zeros(10), 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TooShort);
  }
}

TEST(Determinism, ProfilesIgnoreThreadCount) {
  auto r = gen::rng_for(15, 0);
  const CoeffSeq f = gen::complex_seq(r, 3000);
  setenv("SCOTTISH_LAB_THREADS", "1", 1);
  const DyadicProfile serial = dyadic_profile(f, 0.3, 1.7, 12);
  setenv("SCOTTISH_LAB_THREADS", "8", 1);
  const DyadicProfile parallel = dyadic_profile(f, 0.3, 1.7, 12);
  unsetenv("SCOTTISH_LAB_THREADS");
  EXPECT_EQ(serial.values, parallel.values);
}
