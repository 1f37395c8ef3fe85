#pragma once

// Injective (l^1 (x)v l^1) norm of real matrices by exact sign enumeration or
// local search, and certified brackets for the projective (l^inf (x)^ l^inf)
// norm.
//
// For real Q the supremum of |x^T Q y| over the l^inf unit balls is attained
// at sign vectors, and for fixed x the best y is y_k = sign((Q^T x)_k). The
// search space is therefore x in {-1, +1}^J modulo a global flip, and the
// objective is ||Q^T x||_1.

#include <Eigen/SVD>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "scottish_lab/core.hpp"
#include "scottish_lab/parallel.hpp"

namespace scottish_lab {

inline constexpr std::size_t kExactRowCap = 26;

/// Entries in {-1, +1}. Canonical form has entry 0 equal to +1.
struct SignVector {
  std::vector<int> entries;

  std::size_t size() const noexcept { return entries.size(); }
  int operator[](std::size_t i) const noexcept { return entries[i]; }

  bool is_canonical() const noexcept { return entries.empty() || entries.front() == 1; }

  SignVector canonical() const {
    SignVector s = *this;
    if (!s.is_canonical())
      for (auto& e : s.entries) e = -e;
    return s;
  }

  /// Lexicographic order with + before -.
  friend bool lex_less(const SignVector& a, const SignVector& b) {
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i)
      if (a[i] != b[i]) return a[i] > b[i];
    return a.size() < b.size();
  }

  friend bool operator==(const SignVector&, const SignVector&) = default;
};

/// y_k = sign((Q^T x)_k), with +1 for zero column sums.
inline SignVector best_response(const DenseMatrix& q, const SignVector& x) {
  SignVector y;
  y.entries.resize(q.cols());
  for (std::size_t k = 0; k < q.cols(); ++k) {
    double s = 0.0;
    for (std::size_t j = 0; j < q.rows(); ++j) s += q(j, k) * x[j];
    y.entries[k] = s < 0.0 ? -1 : 1;
  }
  return y;
}

/// ||Q^T x||_1, summed in fixed index order.
inline double sign_objective(const DenseMatrix& q, const SignVector& x) {
  double total = 0.0;
  for (std::size_t k = 0; k < q.cols(); ++k) {
    double s = 0.0;
    for (std::size_t j = 0; j < q.rows(); ++j) s += q(j, k) * x[j];
    total += std::abs(s);
  }
  return total;
}

/// x^T Q y.
inline double bilinear_value(const DenseMatrix& q, const SignVector& x, const SignVector& y) {
  double total = 0.0;
  for (std::size_t j = 0; j < q.rows(); ++j)
    for (std::size_t k = 0; k < q.cols(); ++k) total += q(j, k) * x[j] * y[k];
  return total;
}

struct InjectiveResult {
  double value = 0.0;
  SignVector x;
  SignVector y;
  std::uint64_t evaluations = 0;
  bool exact = false;
};

namespace detail {

inline double abs_mass(const DenseMatrix& q) {
  double m = 0.0;
  for (double v : q.data()) m += std::abs(v);
  return m;
}

inline double tie_tolerance(const DenseMatrix& q) {
  return 64.0 * std::numeric_limits<double>::epsilon() * (abs_mass(q) + 1.0);
}

/// Bit b of a mask is x_{J-1-b} == -1, so x_1 is the most significant bit
/// and smaller masks are lexicographically smaller vectors.
inline SignVector from_mask(std::uint64_t mask, std::size_t rows) {
  SignVector x;
  x.entries.assign(rows, 1);
  for (std::size_t j = 1; j < rows; ++j)
    if ((mask >> (rows - 1 - j)) & 1U) x.entries[j] = -1;
  return x;
}

struct ChunkBest {
  double value = -1.0;
  std::uint64_t mask = 0;
};

}  // namespace detail

/// Exact ||Q||_{l1 (x)v l1} by Gray-code enumeration of x with x_0 = +1 and
/// O(K) column-sum updates per flip. Ties resolve to the lexicographically
/// smallest canonical x (+ before -); y follows from x.
inline InjectiveResult injective_norm_exact(const DenseMatrix& q) {
  const std::size_t rows = q.rows(), cols = q.cols();
  if (rows > kExactRowCap)
    throw Error(ErrorKind::TooLargeForExact, "exact enumeration is capped at J = 26 rows");

  const std::size_t free_bits = rows - 1;
  const std::size_t prefix_bits = std::min<std::size_t>(free_bits, 6);
  const std::size_t gray_bits = free_bits - prefix_bits;
  const std::size_t chunks = std::size_t{1} << prefix_bits;
  const double tol = detail::tie_tolerance(q);

  // Fixed chunking keeps serial and threaded runs identical.
  auto best = parallel_map<detail::ChunkBest>(chunks, [&](std::size_t chunk) {
    const std::uint64_t base = static_cast<std::uint64_t>(chunk) << gray_bits;
    std::vector<int> x = detail::from_mask(base, rows).entries;
    std::vector<double> sums(cols, 0.0);
    for (std::size_t j = 0; j < rows; ++j)
      for (std::size_t k = 0; k < cols; ++k) sums[k] += q(j, k) * x[j];
    auto value_of = [&] {
      double v = 0.0;
      for (double s : sums) v += std::abs(s);
      return v;
    };
    detail::ChunkBest cb{value_of(), base};
    const std::uint64_t steps = std::uint64_t{1} << gray_bits;
    for (std::uint64_t i = 1; i < steps; ++i) {
      const auto bit = static_cast<std::size_t>(std::countr_zero(i));
      const std::size_t j = rows - 1 - bit;
      x[j] = -x[j];
      const double twice = 2.0 * x[j];
      const auto r = q.row(j);
      for (std::size_t k = 0; k < cols; ++k) sums[k] += twice * r[k];
      const double v = value_of();
      const std::uint64_t mask = base | (i ^ (i >> 1));
      if (v > cb.value + tol || (v >= cb.value - tol && mask < cb.mask)) cb = {v, mask};
    }
    // Re-evaluate directly so the chunk result is path independent.
    cb.value = sign_objective(q, detail::from_mask(cb.mask, rows));
    return cb;
  });

  detail::ChunkBest winner = best.front();
  for (const auto& cb : best)
    if (cb.value > winner.value + tol || (cb.value >= winner.value - tol && cb.mask < winner.mask))
      winner = cb;

  InjectiveResult out;
  out.x = detail::from_mask(winner.mask, rows);
  out.y = best_response(q, out.x);
  out.value = sign_objective(q, out.x);
  out.evaluations = std::uint64_t{1} << free_bits;
  out.exact = true;
  return out;
}

/// Random-restart best-improvement bit-flip ascent on ||Q^T x||_1. `budget`
/// counts objective evaluations. Restart 0 starts from x = (+, ..., +); later
/// restarts draw x from derived seeds. The result is a certified lower bound.
inline InjectiveResult injective_norm_search(const DenseMatrix& q, std::uint64_t budget, Seed seed) {
  const std::size_t rows = q.rows(), cols = q.cols();
  budget = std::max<std::uint64_t>(budget, 1);
  const double tol = detail::tie_tolerance(q);

  std::uint64_t evals = 0;
  SignVector best;
  double best_value = -1.0;
  auto offer = [&](const std::vector<int>& xs) {
    SignVector cand = SignVector{xs}.canonical();
    const double v = sign_objective(q, cand);
    if (v > best_value + tol || (v >= best_value - tol && lex_less(cand, best))) {
      best = std::move(cand);
      best_value = v;
    }
  };

  std::vector<int> x(rows);
  std::vector<double> sums(cols);
  for (std::uint64_t restart = 0; evals < budget; ++restart) {
    CounterRng rng(derive_seed(seed, restart));
    for (std::size_t j = 0; j < rows; ++j) x[j] = restart == 0 ? 1 : rng.sign();
    std::fill(sums.begin(), sums.end(), 0.0);
    for (std::size_t j = 0; j < rows; ++j)
      for (std::size_t k = 0; k < cols; ++k) sums[k] += q(j, k) * x[j];
    double current = 0.0;
    for (double s : sums) current += std::abs(s);
    ++evals;

    while (evals < budget) {
      double best_gain = tol;
      std::optional<std::size_t> best_flip;
      for (std::size_t j = 0; j < rows && evals < budget; ++j) {
        const auto r = q.row(j);
        const double twice = -2.0 * x[j];
        double v = 0.0;
        for (std::size_t k = 0; k < cols; ++k) v += std::abs(sums[k] + twice * r[k]);
        ++evals;
        if (v - current > best_gain) {
          best_gain = v - current;
          best_flip = j;
        }
      }
      if (!best_flip) break;
      const std::size_t j = *best_flip;
      x[j] = -x[j];
      const auto r = q.row(j);
      for (std::size_t k = 0; k < cols; ++k) sums[k] += 2.0 * x[j] * r[k];
      current += best_gain;
    }
    offer(x);
  }

  InjectiveResult out;
  out.x = best;
  out.y = best_response(q, out.x);
  out.value = sign_objective(q, out.x);
  out.evaluations = evals;
  out.exact = false;
  return out;
}

/// Exact when either dimension is within the cap (transposing if needed),
/// otherwise local search.
inline InjectiveResult injective_norm(const DenseMatrix& q, std::uint64_t budget, Seed seed) {
  if (q.rows() <= kExactRowCap) return injective_norm_exact(q);
  if (q.cols() <= kExactRowCap) {
    const InjectiveResult t = injective_norm_exact(q.transposed());
    InjectiveResult out;
    out.x = t.y.canonical();
    out.y = best_response(q, out.x);
    out.value = sign_objective(q, out.x);
    out.evaluations = t.evaluations;
    out.exact = true;
    return out;
  }
  return injective_norm_search(q, budget, seed);
}

/// Upper bound on ||Q||_{l1 (x)v l1}: min(sum |q_jk|, sqrt(JK) ||Q||_2).
inline double injective_upper_bound(const DenseMatrix& q) {
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
      q.data().data(), static_cast<Eigen::Index>(q.rows()), static_cast<Eigen::Index>(q.cols()));
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const double spectral = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  return std::min(detail::abs_mass(q),
                  std::sqrt(static_cast<double>(q.rows() * q.cols())) * spectral);
}

// ---------------------------------------------------------------------------
// Projective brackets

struct RankOneTerm {
  std::vector<double> a;
  std::vector<double> b;

  double cost() const {
    double ma = 0.0, mb = 0.0;
    for (double v : a) ma = std::max(ma, std::abs(v));
    for (double v : b) mb = std::max(mb, std::abs(v));
    return ma * mb;
  }
};

inline double decomposition_cost(const std::vector<RankOneTerm>& terms) {
  double c = 0.0;
  for (const auto& t : terms) c += t.cost();
  return c;
}

/// Sum of the rank-one terms, J x K.
inline DenseMatrix recompose(const std::vector<RankOneTerm>& terms, std::size_t rows, std::size_t cols) {
  std::vector<double> d(rows * cols, 0.0);
  for (const auto& t : terms)
    for (std::size_t j = 0; j < rows; ++j)
      for (std::size_t k = 0; k < cols; ++k) d[j * cols + k] += t.a[j] * t.b[k];
  return DenseMatrix(rows, cols, std::move(d));
}

/// Lower-bound certificate: |<Q, T>| / ||T||_v with an explicit test matrix.
struct LowerCertificate {
  std::string test_ref;
  DenseMatrix test = DenseMatrix::zeros(1, 1);
  double pairing = 0.0;
  double test_norm = 1.0;
  /// True when test_norm is the exact injective norm (x, y attain it);
  /// otherwise test_norm is an upper bound, which keeps the ratio a lower bound.
  bool test_norm_exact = true;
  SignVector x;
  SignVector y;

  double value() const { return test_norm > 0.0 ? std::abs(pairing) / test_norm : 0.0; }
};

struct StrategyValue {
  std::string name;
  std::string side;  // "lower" or "upper"
  double value = 0.0;
};

struct NormBracket {
  double lower = 0.0;
  double upper = 0.0;
  LowerCertificate lower_cert;
  std::vector<RankOneTerm> upper_cert;
  std::string lower_strategy;
  std::string upper_strategy;
  std::vector<StrategyValue> strategies;
  bool exact = false;
};

struct BracketOptions {
  std::uint64_t budget = 1024;
  Seed seed{};
  /// Peeling iterations for the cut decomposition.
  std::size_t cut_iterations = 8;
  /// Exact sign enumeration inside cut peeling up to this many rows.
  std::size_t cut_exact_rows = 12;
  double rank_one_tol = 1e-10;
};

namespace detail {

inline std::vector<RankOneTerm> row_decomposition(const DenseMatrix& q) {
  std::vector<RankOneTerm> terms;
  for (std::size_t j = 0; j < q.rows(); ++j) {
    const auto r = q.row(j);
    if (std::all_of(r.begin(), r.end(), [](double v) { return v == 0.0; })) continue;
    RankOneTerm t;
    t.a.assign(q.rows(), 0.0);
    t.a[j] = 1.0;
    t.b.assign(r.begin(), r.end());
    terms.push_back(std::move(t));
  }
  return terms;
}

inline std::vector<RankOneTerm> column_decomposition(const DenseMatrix& q) {
  std::vector<RankOneTerm> terms;
  for (std::size_t k = 0; k < q.cols(); ++k) {
    RankOneTerm t;
    t.a.resize(q.rows());
    bool nonzero = false;
    for (std::size_t j = 0; j < q.rows(); ++j) {
      t.a[j] = q(j, k);
      nonzero = nonzero || t.a[j] != 0.0;
    }
    if (!nonzero) continue;
    t.b.assign(q.cols(), 0.0);
    t.b[k] = 1.0;
    terms.push_back(std::move(t));
  }
  return terms;
}

inline std::vector<RankOneTerm> cheaper_of_rows_columns(const DenseMatrix& q) {
  auto rows = row_decomposition(q);
  auto cols = column_decomposition(q);
  return decomposition_cost(cols) < decomposition_cost(rows) ? cols : rows;
}

inline DenseMatrix subtract(const DenseMatrix& q, const RankOneTerm& t) {
  std::vector<double> d(q.data().begin(), q.data().end());
  for (std::size_t j = 0; j < q.rows(); ++j)
    for (std::size_t k = 0; k < q.cols(); ++k) d[j * q.cols() + k] -= t.a[j] * t.b[k];
  return DenseMatrix(q.rows(), q.cols(), std::move(d));
}

/// Greedy peeling: after each peeled term the residual is closed off by the
/// cheaper of its row/column decompositions; the cheapest stopping point wins.
template <typename NextTerm>
std::vector<RankOneTerm> peel(const DenseMatrix& q, std::size_t iterations, NextTerm&& next) {
  std::vector<RankOneTerm> peeled;
  std::vector<RankOneTerm> best = cheaper_of_rows_columns(q);
  double best_cost = decomposition_cost(best);
  DenseMatrix residual = q;
  const double floor = 1e-13 * q.max_abs();
  for (std::size_t it = 0; it < iterations && residual.max_abs() > floor; ++it) {
    std::optional<RankOneTerm> t = next(residual, it);
    if (!t) break;
    residual = subtract(residual, *t);
    peeled.push_back(std::move(*t));
    auto tail = cheaper_of_rows_columns(residual);
    const double cost = decomposition_cost(peeled) + decomposition_cost(tail);
    if (cost < best_cost) {
      best_cost = cost;
      best = peeled;
      best.insert(best.end(), tail.begin(), tail.end());
    }
  }
  return best;
}

inline std::vector<RankOneTerm> svd_peel(const DenseMatrix& q) {
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
      q.data().data(), static_cast<Eigen::Index>(q.rows()), static_cast<Eigen::Index>(q.cols()));
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  return peel(q, static_cast<std::size_t>(sv.size()),
              [&](const DenseMatrix&, std::size_t i) -> std::optional<RankOneTerm> {
                if (sv(static_cast<Eigen::Index>(i)) <= 1e-14 * sv(0)) return std::nullopt;
                RankOneTerm t;
                t.a.resize(q.rows());
                t.b.resize(q.cols());
                const auto ii = static_cast<Eigen::Index>(i);
                for (std::size_t j = 0; j < q.rows(); ++j)
                  t.a[j] = sv(ii) * svd.matrixU()(static_cast<Eigen::Index>(j), ii);
                for (std::size_t k = 0; k < q.cols(); ++k)
                  t.b[k] = svd.matrixV()(static_cast<Eigen::Index>(k), ii);
                return t;
              });
}

/// Cut-decomposition peeling: the residual's best sign pair (x, y) yields
/// the term (x^T R y / (J K)) x (outer) y.
inline std::vector<RankOneTerm> cut_peel(const DenseMatrix& q, const BracketOptions& opt) {
  const double area = static_cast<double>(q.rows() * q.cols());
  return peel(q, opt.cut_iterations, [&](const DenseMatrix& r, std::size_t it) -> std::optional<RankOneTerm> {
    const InjectiveResult inj = r.rows() <= opt.cut_exact_rows
                                    ? injective_norm_exact(r)
                                    : injective_norm_search(r, opt.budget, derive_seed(opt.seed, 1000 + it));
    const double coef = bilinear_value(r, inj.x, inj.y) / area;
    if (coef == 0.0) return std::nullopt;
    RankOneTerm t;
    t.a.resize(r.rows());
    t.b.resize(r.cols());
    for (std::size_t j = 0; j < r.rows(); ++j) t.a[j] = coef * inj.x[j];
    for (std::size_t k = 0; k < r.cols(); ++k) t.b[k] = inj.y[k];
    return t;
  });
}

/// a (outer) b with a = pivot column, b = pivot row / pivot, when the
/// residual is below tol * max|q|.
inline std::optional<RankOneTerm> detect_rank_one(const DenseMatrix& q, double tol) {
  std::size_t pj = 0, pk = 0;
  double pivot = 0.0;
  for (std::size_t j = 0; j < q.rows(); ++j)
    for (std::size_t k = 0; k < q.cols(); ++k)
      if (std::abs(q(j, k)) > std::abs(pivot)) {
        pivot = q(j, k);
        pj = j;
        pk = k;
      }
  if (pivot == 0.0) return std::nullopt;
  RankOneTerm t;
  t.a.resize(q.rows());
  t.b.resize(q.cols());
  for (std::size_t j = 0; j < q.rows(); ++j) t.a[j] = q(j, pk);
  for (std::size_t k = 0; k < q.cols(); ++k) t.b[k] = q(pj, k) / pivot;
  for (std::size_t j = 0; j < q.rows(); ++j)
    for (std::size_t k = 0; k < q.cols(); ++k)
      if (std::abs(q(j, k) - t.a[j] * t.b[k]) > tol * std::abs(pivot)) return std::nullopt;
  return t;
}

inline LowerCertificate make_lower(const DenseMatrix& q, std::string ref, DenseMatrix test,
                                   const BracketOptions& opt, std::optional<double> known_norm = {}) {
  LowerCertificate c;
  c.test_ref = std::move(ref);
  c.pairing = pairing(q, test);
  if (known_norm) {
    c.test_norm = *known_norm;
  } else if (std::min(test.rows(), test.cols()) <= kExactRowCap) {
    const InjectiveResult inj = injective_norm(test, opt.budget, opt.seed);
    c.test_norm = inj.value;
    c.x = inj.x;
    c.y = inj.y;
  } else {
    c.test_norm = injective_upper_bound(test);
    c.test_norm_exact = false;
  }
  c.test = std::move(test);
  return c;
}

}  // namespace detail

/// Certified bracket for ||Q||_{l^inf (x)^ l^inf}.
///
/// Upper: cheapest of the row decomposition, the column decomposition, SVD
/// peeling and cut peeling (each closed off by rows/columns), or the exact
/// value when Q has numerical rank one. Lower: best duality ratio
/// |<Q, T>| / ||T||_{l1 (x)v l1} over T in {the largest single entry, Q
/// itself, the identity}.
inline NormBracket projective_bracket(const DenseMatrix& q, const BracketOptions& opt = {}) {
  NormBracket out;
  const std::size_t rows = q.rows(), cols = q.cols();

  // Lower side.
  std::size_t pj = 0, pk = 0;
  for (std::size_t j = 0; j < rows; ++j)
    for (std::size_t k = 0; k < cols; ++k)
      if (std::abs(q(j, k)) > std::abs(q(pj, pk))) {
        pj = j;
        pk = k;
      }
  std::vector<LowerCertificate> lowers;
  {
    LowerCertificate c = detail::make_lower(q, "entry(" + std::to_string(pj) + "," + std::to_string(pk) + ")",
                                            DenseMatrix::unit(rows, cols, pj, pk), opt, 1.0);
    c.x.entries.assign(rows, 1);  // every sign pair attains ||e_jk||_v = 1
    c.y = best_response(c.test, c.x);
    lowers.push_back(std::move(c));
  }
  if (q.max_abs() > 0.0) lowers.push_back(detail::make_lower(q, "self", q, opt));
  lowers.push_back(detail::make_lower(q, "identity", DenseMatrix::identity(rows, cols), opt,
                                      static_cast<double>(std::min(rows, cols))));
  for (const auto& c : lowers) out.strategies.push_back({c.test_ref, "lower", c.value()});
  std::size_t best_lower = 0;
  for (std::size_t i = 1; i < lowers.size(); ++i)
    if (lowers[i].value() > lowers[best_lower].value()) best_lower = i;
  out.lower_cert = lowers[best_lower];
  out.lower = out.lower_cert.value();
  out.lower_strategy = out.lower_cert.test_ref;

  // Upper side.
  if (q.max_abs() == 0.0) {
    out.upper = 0.0;
    out.upper_strategy = "zero";
    out.strategies.push_back({"zero", "upper", 0.0});
    out.exact = true;
    return out;
  }
  if (auto r1 = detail::detect_rank_one(q, opt.rank_one_tol)) {
    out.upper_cert = {*r1};
    out.upper = r1->cost();
    out.upper_strategy = "rank_one";
    out.strategies.push_back({"rank_one", "upper", out.upper});
    out.exact = true;
    return out;
  }
  std::vector<std::pair<std::string, std::vector<RankOneTerm>>> uppers;
  uppers.emplace_back("rows", detail::row_decomposition(q));
  uppers.emplace_back("columns", detail::column_decomposition(q));
  uppers.emplace_back("svd_peel", detail::svd_peel(q));
  uppers.emplace_back("cut_peel", detail::cut_peel(q, opt));
  std::size_t best_upper = 0;
  double best_cost = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < uppers.size(); ++i) {
    const double c = decomposition_cost(uppers[i].second);
    out.strategies.push_back({uppers[i].first, "upper", c});
    if (c < best_cost) {
      best_cost = c;
      best_upper = i;
    }
  }
  out.upper_cert = std::move(uppers[best_upper].second);
  out.upper = best_cost;
  out.upper_strategy = uppers[best_upper].first;
  return out;
}

/// Brackets of P_n Q for n = 0..nmax. The lower bounds are made
/// nondecreasing by carrying the previous corner's test matrix forward,
/// which is valid because ||P_{n-1} Q|| <= ||P_n Q||.
inline std::vector<NormBracket> v2_profile(const DenseMatrix& q, std::size_t nmax, const BracketOptions& opt = {}) {
  if (nmax >= std::min(q.rows(), q.cols()))
    throw Error(ErrorKind::InvalidRegime, "v2_profile needs nmax < min(J, K)");
  std::vector<NormBracket> out;
  out.reserve(nmax + 1);
  for (std::size_t n = 0; n <= nmax; ++n) {
    BracketOptions o = opt;
    o.seed = derive_seed(opt.seed, n);
    const DenseMatrix corner = q.corner(n);
    NormBracket b = projective_bracket(corner, o);
    if (n > 0 && out.back().lower > b.lower) {
      const LowerCertificate& prev = out.back().lower_cert;
      std::vector<double> padded(corner.rows() * corner.cols(), 0.0);
      for (std::size_t j = 0; j < prev.test.rows(); ++j)
        for (std::size_t k = 0; k < prev.test.cols(); ++k) padded[j * corner.cols() + k] = prev.test(j, k);
      LowerCertificate c = prev;
      c.test_ref = "corner(" + std::to_string(n - 1) + ")";
      c.test = DenseMatrix(corner.rows(), corner.cols(), std::move(padded));
      c.pairing = pairing(corner, c.test);
      if (!c.x.entries.empty()) c.x.entries.resize(corner.rows(), 1);
      if (!c.y.entries.empty()) c.y = best_response(c.test, c.x);
      b.lower_cert = std::move(c);
      b.lower = b.lower_cert.value();
      b.lower_strategy = b.lower_cert.test_ref;
      b.strategies.push_back({b.lower_strategy, "lower", b.lower});
    }
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace scottish_lab
