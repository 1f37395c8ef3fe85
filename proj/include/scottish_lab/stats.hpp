#pragma once

// Least-squares line fit used by the growth diagnostics.

#include <cmath>
#include <span>

namespace scottish_lab {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// Root-mean-square residual.
  double residual = 0.0;
};

inline LineFit fit_line(std::span<const double> xs, std::span<const double> ys) {
  const std::size_t m = xs.size();
  LineFit f;
  if (m == 0) return f;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  f.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  f.intercept = my - f.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = ys[i] - (f.intercept + f.slope * xs[i]);
    ss += r * r;
  }
  f.residual = std::sqrt(ss / static_cast<double>(m));
  return f;
}

}  // namespace scottish_lab
