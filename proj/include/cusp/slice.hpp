#pragma once

#include <array>
#include <vector>

#include "cusp/common.hpp"

namespace cusp {

/// The compact slice: a flat torus T^n (n = 1 or 2) with a uniform periodic
/// grid. The flat metric is the identity in periodic coordinates, so all
/// slice curvature quantities vanish and trigonometric calculus is exact on
/// grid frequencies below Nyquist.
struct SliceSpec {
  int n = 1;
  std::array<double, 2> periods{2.0 * kPi, 2.0 * kPi};
  std::array<int, 2> grid{64, 64};

  SliceSpec() = default;
  SliceSpec(int n_, std::array<double, 2> periods_, std::array<int, 2> grid_)
      : n(n_), periods(periods_), grid(grid_) {
    validate();
  }

  void validate() const {
    if (n != 1 && n != 2) throw ConfigError(0, "slice dimension n must be 1 or 2");
    for (int d = 0; d < n; ++d) {
      if (!(periods[d] > 0.0)) throw ConfigError(0, "slice periods must be positive");
      if (grid[d] < 8 || grid[d] % 2 != 0)
        throw ConfigError(0, "grid sizes must be even and at least 8");
    }
  }

  long total() const { return n == 1 ? grid[0] : long(grid[0]) * grid[1]; }

  double spacing(int d) const { return periods[d] / grid[d]; }
  double cell_area() const {
    double a = 1.0;
    for (int d = 0; d < n; ++d) a *= spacing(d);
    return a;
  }
  /// Coordinate of grid node i along axis d.
  double coord(int d, int i) const { return periods[d] * i / grid[d]; }

  long index(int i, int j = 0) const { return n == 1 ? i : long(i) * grid[1] + j; }

  bool operator==(const SliceSpec& o) const {
    if (n != o.n) return false;
    for (int d = 0; d < n; ++d)
      if (periods[d] != o.periods[d] || grid[d] != o.grid[d]) return false;
    return true;
  }
};

/// Scalar samples on the slice grid, row-major (axis 1 fastest for n = 2).
using Field = std::vector<double>;

inline Field zero_field(const SliceSpec& s) { return Field(s.total(), 0.0); }

}  // namespace cusp
