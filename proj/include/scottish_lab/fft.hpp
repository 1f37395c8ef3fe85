#pragma once

// Thin RAII layer over FFTW: sampling a polynomial on the unit circle and
// linear convolution. Plans use FFTW_ESTIMATE so results do not depend on
// timing measurements.

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "scottish_lab/core.hpp"

namespace scottish_lab::fft {

namespace detail {

inline std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(fftw_complex* p) const noexcept { fftw_free(p); }
};

using Buffer = std::unique_ptr<fftw_complex[], FftwFree>;

inline Buffer allocate(std::size_t n) {
  return Buffer(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n)));
}

/// In-place transform of `data`, sign +1 (backward) or -1 (forward),
/// unnormalized.
inline void transform(std::vector<Complex>& data, int sign) {
  const std::size_t n = data.size();
  Buffer buf = allocate(n);
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(n), buf.get(), buf.get(), sign, FFTW_ESTIMATE);
  }
  for (std::size_t i = 0; i < n; ++i) {
    buf[i][0] = data[i].real();
    buf[i][1] = data[i].imag();
  }
  fftw_execute(plan);
  for (std::size_t i = 0; i < n; ++i) data[i] = Complex(buf[i][0], buf[i][1]);
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan);
}

}  // namespace detail

/// Smallest power of two >= n (n >= 1).
inline std::size_t next_pow2(std::size_t n) {
  std::size_t g = 1;
  while (g < n) g <<= 1;
  return g;
}

/// Values f(e^{i theta_m}), theta_m = 2 pi m / grid, for f = sum c_k z^k.
/// Requires grid >= coeffs.size().
inline std::vector<Complex> sample_on_circle(std::span<const Complex> coeffs, std::size_t grid) {
  std::vector<Complex> data(grid);
  std::copy(coeffs.begin(), coeffs.end(), data.begin());
  detail::transform(data, FFTW_BACKWARD);
  return data;
}

/// Linear convolution (Cauchy product) of two coefficient arrays.
inline std::vector<Complex> convolve(std::span<const Complex> a, std::span<const Complex> b) {
  const std::size_t out = a.size() + b.size() - 1;
  const std::size_t n = next_pow2(out);
  std::vector<Complex> fa(n), fb(n);
  std::copy(a.begin(), a.end(), fa.begin());
  std::copy(b.begin(), b.end(), fb.begin());
  detail::transform(fa, FFTW_FORWARD);
  detail::transform(fb, FFTW_FORWARD);
  for (std::size_t i = 0; i < n; ++i) fa[i] *= fb[i];
  detail::transform(fa, FFTW_BACKWARD);
  fa.resize(out);
  for (auto& v : fa) v /= static_cast<double>(n);
  return fa;
}

}  // namespace scottish_lab::fft
