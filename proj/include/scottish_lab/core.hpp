#pragma once

// Shared domain types: coefficient sequences, dense matrices, Hankel symbols,
// dyadic block indexing and the seeded counter-based generator.

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace scottish_lab {

enum class ErrorKind {
  ComplexNotSupported,
  EmptyDimension,
  TooShort,
  InvalidExponent,
  TooLargeForExact,
  InvalidRegime,
  InvalidTarget,
  NonFinite,
  Parse,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ComplexNotSupported: return "ComplexNotSupported";
    case ErrorKind::EmptyDimension: return "EmptyDimension";
    case ErrorKind::TooShort: return "TooShort";
    case ErrorKind::InvalidExponent: return "InvalidExponent";
    case ErrorKind::TooLargeForExact: return "TooLargeForExact";
    case ErrorKind::InvalidRegime: return "InvalidRegime";
    case ErrorKind::InvalidTarget: return "InvalidTarget";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

/// Domain error. Every failure raised by the library carries a kind so the
/// CLI can map it onto an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// CoeffSeq

/// Finite coefficient sequence {c_k}, k = 0..D. Read as the analytic
/// polynomial sum c_k z^k or as a truncated sequence. Reads past the degree
/// return zero.
class CoeffSeq {
 public:
  CoeffSeq() : c_(1, Complex{}) {}

  explicit CoeffSeq(std::vector<Complex> coeffs) : c_(std::move(coeffs)) { validate(); }

  explicit CoeffSeq(const std::vector<double>& re) : c_(re.begin(), re.end()) { validate(); }

  CoeffSeq(std::initializer_list<double> re) : c_(re.begin(), re.end()) { validate(); }

  static CoeffSeq zeros(std::size_t length) {
    if (length == 0) throw Error(ErrorKind::EmptyDimension, "CoeffSeq needs length >= 1");
    return CoeffSeq(std::vector<Complex>(length));
  }

  /// c * z^k, padded with zeros below k.
  static CoeffSeq monomial(std::size_t k, Complex c = 1.0) {
    std::vector<Complex> v(k + 1);
    v[k] = c;
    return CoeffSeq(std::move(v));
  }

  std::size_t size() const noexcept { return c_.size(); }
  std::size_t degree() const noexcept { return c_.size() - 1; }

  Complex operator[](std::size_t k) const noexcept { return k < c_.size() ? c_[k] : Complex{}; }

  std::span<const Complex> coeffs() const noexcept { return c_; }

  bool is_real() const noexcept {
    return std::all_of(c_.begin(), c_.end(), [](const Complex& v) { return v.imag() == 0.0; });
  }

  bool is_zero() const noexcept {
    return std::all_of(c_.begin(), c_.end(), [](const Complex& v) { return v == Complex{}; });
  }

  std::vector<double> real_part() const {
    std::vector<double> out(c_.size());
    std::transform(c_.begin(), c_.end(), out.begin(), [](const Complex& v) { return v.real(); });
    return out;
  }

  CoeffSeq scaled(Complex s) const {
    std::vector<Complex> v(c_);
    for (auto& x : v) x *= s;
    return CoeffSeq(std::move(v));
  }

  /// First `length` entries, zero-padded when the sequence is shorter.
  CoeffSeq truncated(std::size_t length) const {
    std::vector<Complex> v(length);
    std::copy_n(c_.begin(), std::min(length, c_.size()), v.begin());
    return CoeffSeq(std::move(v));
  }

  friend bool operator==(const CoeffSeq&, const CoeffSeq&) = default;

 private:
  void validate() const {
    if (c_.empty()) throw Error(ErrorKind::EmptyDimension, "CoeffSeq needs length >= 1");
    for (const auto& v : c_) {
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw Error(ErrorKind::NonFinite, "CoeffSeq entries must be finite");
    }
  }

  std::vector<Complex> c_;
};

inline void require_real(const CoeffSeq& s, const char* what) {
  if (!s.is_real()) throw Error(ErrorKind::ComplexNotSupported, std::string(what) + " is real-only");
}

// ---------------------------------------------------------------------------
// DenseMatrix

/// Real J x K matrix, row-major.
class DenseMatrix {
 public:
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (rows_ == 0 || cols_ == 0) throw Error(ErrorKind::EmptyDimension, "matrix needs J, K >= 1");
    if (data_.size() != rows_ * cols_)
      throw Error(ErrorKind::EmptyDimension, "matrix data size does not match dimensions");
    for (double v : data_)
      if (!std::isfinite(v)) throw Error(ErrorKind::NonFinite, "matrix entries must be finite");
  }

  static DenseMatrix zeros(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) throw Error(ErrorKind::EmptyDimension, "matrix needs J, K >= 1");
    return DenseMatrix(rows, cols, std::vector<double>(rows * cols, 0.0));
  }

  /// Ones on the main diagonal, rectangular allowed.
  static DenseMatrix identity(std::size_t rows, std::size_t cols) {
    std::vector<double> d(rows * cols, 0.0);
    for (std::size_t i = 0; i < std::min(rows, cols); ++i) d[i * cols + i] = 1.0;
    return DenseMatrix(rows, cols, std::move(d));
  }

  static DenseMatrix unit(std::size_t rows, std::size_t cols, std::size_t j, std::size_t k) {
    std::vector<double> d(rows * cols, 0.0);
    d.at(j * cols + k) = 1.0;
    return DenseMatrix(rows, cols, std::move(d));
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double operator()(std::size_t j, std::size_t k) const noexcept { return data_[j * cols_ + k]; }

  std::span<const double> data() const noexcept { return data_; }
  std::span<const double> row(std::size_t j) const noexcept { return {data_.data() + j * cols_, cols_}; }

  DenseMatrix transposed() const {
    std::vector<double> d(data_.size());
    for (std::size_t j = 0; j < rows_; ++j)
      for (std::size_t k = 0; k < cols_; ++k) d[k * rows_ + j] = data_[j * cols_ + k];
    return DenseMatrix(cols_, rows_, std::move(d));
  }

  DenseMatrix scaled(double s) const {
    std::vector<double> d(data_);
    for (auto& v : d) v *= s;
    return DenseMatrix(rows_, cols_, std::move(d));
  }

  /// Leading (n+1) x (n+1) block, i.e. the nonzero part of P_n Q.
  DenseMatrix corner(std::size_t n) const {
    const std::size_t r = std::min(rows_, n + 1), c = std::min(cols_, n + 1);
    std::vector<double> d(r * c);
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < c; ++k) d[j * c + k] = data_[j * cols_ + k];
    return DenseMatrix(r, c, std::move(d));
  }

  double max_abs() const noexcept {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
  }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

inline DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorKind::EmptyDimension, "matrix sum needs equal dimensions");
  std::vector<double> d(a.data().begin(), a.data().end());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] += b.data()[i];
  return DenseMatrix(a.rows(), a.cols(), std::move(d));
}

/// Frobenius pairing <A, B> = sum_{jk} A_jk B_jk.
inline double pairing(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorKind::EmptyDimension, "pairing needs equal dimensions");
  double s = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) s += a.data()[i] * b.data()[i];
  return s;
}

/// x (outer) y for real sequences.
inline DenseMatrix outer(const CoeffSeq& x, const CoeffSeq& y) {
  require_real(x, "outer");
  require_real(y, "outer");
  std::vector<double> d(x.size() * y.size());
  for (std::size_t j = 0; j < x.size(); ++j)
    for (std::size_t k = 0; k < y.size(); ++k) d[j * y.size() + k] = x[j].real() * y[k].real();
  return DenseMatrix(x.size(), y.size(), std::move(d));
}

inline DenseMatrix outer(std::span<const double> a, std::span<const double> b) {
  std::vector<double> d(a.size() * b.size());
  for (std::size_t j = 0; j < a.size(); ++j)
    for (std::size_t k = 0; k < b.size(); ++k) d[j * b.size() + k] = a[j] * b[k];
  return DenseMatrix(a.size(), b.size(), std::move(d));
}

// ---------------------------------------------------------------------------
// Hankel

/// N x N matrix q_jk = gamma_{j+k}; entries past the symbol's degree are 0.
inline DenseMatrix hankel_matrix(const CoeffSeq& gamma, std::size_t n) {
  require_real(gamma, "hankel_matrix");
  if (n == 0) throw Error(ErrorKind::EmptyDimension, "hankel_matrix needs N >= 1");
  std::vector<double> d(n * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) d[j * n + k] = gamma[j + k].real();
  return DenseMatrix(n, n, std::move(d));
}

struct HankelSymbol {
  CoeffSeq symbol;
  std::size_t size = 1;

  DenseMatrix materialize() const { return hankel_matrix(symbol, size); }
};

// ---------------------------------------------------------------------------
// Dyadic block indexing

/// Block n: hard block H_n = [2^n, 2^{n+1} - 1]; multiplier support
/// S_n = (2^{n-1}, 2^{n+1}) for n >= 1 and S_0 = {0, 1}.
struct BlockIndex {
  unsigned n = 0;

  std::uint64_t hard_lo() const noexcept { return std::uint64_t{1} << n; }
  std::uint64_t hard_hi() const noexcept { return (std::uint64_t{2} << n) - 1; }

  bool in_hard(std::uint64_t k) const noexcept { return k >= hard_lo() && k <= hard_hi(); }

  bool in_support(std::uint64_t k) const noexcept {
    if (n == 0) return k <= 1;
    return k > (std::uint64_t{1} << (n - 1)) && k < (std::uint64_t{2} << n);
  }
};

/// The unique n with k in H_n. k must be >= 1.
inline unsigned hard_block_of(std::uint64_t k) {
  if (k == 0) throw Error(ErrorKind::TooShort, "index 0 lies in no hard block");
  return static_cast<unsigned>(std::bit_width(k) - 1);
}

// ---------------------------------------------------------------------------
// Seeded randomness

struct Seed {
  std::uint64_t value = 0;
  friend bool operator==(const Seed&, const Seed&) = default;
};

inline std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Independent child seed for task `stream` (restarts, blocks, cases).
inline Seed derive_seed(Seed parent, std::uint64_t stream) noexcept {
  return Seed{mix64(parent.value ^ mix64(stream + 0x9e3779b97f4a7c15ULL))};
}

/// Counter-based generator: output i is a pure function of (seed, i).
class CounterRng {
 public:
  explicit CounterRng(Seed seed) noexcept : key_(mix64(seed.value + 0x632be59bd9b4e019ULL)) {}

  std::uint64_t next() noexcept { return mix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) noexcept {
    return static_cast<std::uint64_t>(uniform() * static_cast<double>(bound));
  }

  int sign() noexcept { return (next() >> 63) ? -1 : 1; }

  double normal() noexcept {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// ---------------------------------------------------------------------------

/// Mean of the last quarter of the entries, the estimated limit of a
/// sequence assumed convergent.
inline Complex limit_estimate(const CoeffSeq& z) {
  if (z.size() < 4) throw Error(ErrorKind::TooShort, "limit_estimate needs length >= 4");
  const std::size_t count = z.size() / 4;
  Complex sum{};
  for (std::size_t k = z.size() - count; k < z.size(); ++k) sum += z[k];
  return sum / static_cast<double>(count);
}

}  // namespace scottish_lab
