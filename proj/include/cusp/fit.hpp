#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace cusp {

/// Ordinary least squares line y = intercept + slope * x with a 95%
/// confidence half-width for the slope (Student t, small-sample table).
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_ci95 = 0.0;
  size_t points = 0;
  bool valid = false;
};

inline double student_t_975(size_t df) {
  static const double table[] = {12.706, 4.303, 3.182, 2.776, 2.571, 2.447,
                                 2.365,  2.306, 2.262, 2.228, 2.201, 2.179,
                                 2.160,  2.145, 2.131, 2.120, 2.110, 2.101,
                                 2.093,  2.086};
  if (df == 0) return 0.0;
  if (df <= 20) return table[df - 1];
  return 1.96 + 2.0 / double(df);  // smooth tail toward the normal quantile
}

inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  LineFit f;
  if (x.size() != y.size() || x.size() < 2) return f;
  const size_t n = x.size();
  double sx = 0.0, sy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) return f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.points = n;
  f.valid = true;
  if (n > 2) {
    double sse = 0.0;
    for (size_t i = 0; i < n; ++i) {
      const double e = y[i] - (f.intercept + f.slope * x[i]);
      sse += e * e;
    }
    const double se = std::sqrt(sse / double(n - 2) / sxx);
    f.slope_ci95 = student_t_975(n - 2) * se;
  }
  return f;
}

}  // namespace cusp
