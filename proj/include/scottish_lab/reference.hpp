#pragma once

// Independent brute-force oracle for the injective norm: every (x, y) sign
// pair, no best-response shortcut, no Gray code. Only for tiny matrices.

#include <cmath>
#include <cstdint>

#include "scottish_lab/core.hpp"

namespace scottish_lab::reference {

inline constexpr std::size_t kBruteForceCap = 10;

inline double injective_norm_brute(const DenseMatrix& q) {
  if (q.rows() > kBruteForceCap || q.cols() > kBruteForceCap)
    throw Error(ErrorKind::TooLargeForExact, "brute force limited to 10x10");
  const std::uint64_t nx = std::uint64_t{1} << q.rows();
  const std::uint64_t ny = std::uint64_t{1} << q.cols();
  double best = 0.0;
  for (std::uint64_t mx = 0; mx < nx; ++mx)
    for (std::uint64_t my = 0; my < ny; ++my) {
      double v = 0.0;
      for (std::size_t j = 0; j < q.rows(); ++j) {
        const double xj = (mx >> j) & 1 ? -1.0 : 1.0;
        for (std::size_t k = 0; k < q.cols(); ++k) {
          const double yk = (my >> k) & 1 ? -1.0 : 1.0;
          v += xj * q(j, k) * yk;
        }
      }
      best = std::max(best, std::abs(v));
    }
  return best;
}

}  // namespace scottish_lab::reference
