#include "cusp/isoperimetric.hpp"

#include <cmath>

namespace cusp {

CandidateProfile slice_region_profile(double v, double period) {
  if (!(v > 0.0) || !(v < period))
    throw GeometryError("volume outside (0, total end volume)");
  CandidateProfile p;
  p.parameter = std::log(period / v);  // region [R, infty) with L e^{-R} = v
  p.length = v;
  p.H = -1.0;
  return p;
}

CandidateProfile geodesic_disk_profile(double v, double center_r, double period) {
  if (!(v > 0.0)) throw GeometryError("volume must be positive");
  const double rho = std::acosh(1.0 + v / (2.0 * kPi));
  const double inj = std::asinh(0.5 * period * std::exp(-center_r));
  if (rho > inj || rho >= center_r)
    throw GeometryError("competitor not embeddable");
  CandidateProfile p;
  p.parameter = center_r;
  p.length = std::sqrt(v * v + 4.0 * kPi * v);  // 2 pi sinh rho
  p.H = -std::cosh(rho) / std::sinh(rho);
  return p;
}

namespace {

// Composite Simpson of f over [a, b] with an even number of intervals.
template <class F>
double simpson(const F& f, double a, double b, double step) {
  int m = int(std::ceil((b - a) / step));
  if (m < 2) m = 2;
  if (m % 2) ++m;
  const double h = (b - a) / m;
  double s = f(a) + f(b);
  for (int i = 1; i < m; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

struct RegionGeometry {
  double volume = 0.0;
  double length = 0.0;
};

// Volume beyond the graph r = r_b(theta) and the length of the graph, by
// tensor-product quadrature: trapezoid in theta (exact for trigonometric
// integrands on the periodic grid), Simpson in r, tail truncated.
RegionGeometry graph_region(const AmbientMetric& g, const Spectral& sp,
                            const Field& boundary, const Field& dboundary,
                            double r_trunc, double quad_step) {
  const SliceSpec& s = sp.slice();
  const int N = s.grid[0];
  const double dtheta = s.spacing(0);

  RegionGeometry out;
  double x[1];
  for (int i = 0; i < N; ++i) {
    x[0] = s.coord(0, i);
    auto sqrt_det = [&](double r) {
      const SmallMat gm = g.metric_at(r, x);
      return std::sqrt(gm.det());
    };
    out.volume += simpson(sqrt_det, boundary[i], r_trunc, quad_step) * dtheta;

    const SmallMat gm = g.metric_at(boundary[i], x);
    const double up = dboundary[i];
    const double induced =
        up * up * gm(0, 0) + 2.0 * up * gm(0, 1) + gm(1, 1);
    if (!(induced > 0.0)) throw GeometryError("induced metric singular");
    out.length += std::sqrt(induced) * dtheta;
  }
  return out;
}

}  // namespace

std::vector<IsoperimetricSample> compare_profiles(
    const AmbientMetric& g, std::shared_ptr<const Spectral> spectral,
    const std::vector<double>& v_grid, const IsoperimetricOptions& opt) {
  const Spectral& sp = *spectral;
  const SliceSpec& s = sp.slice();
  if (s.n != 1)
    throw ConfigError(0, "isoperimetric comparison is defined for n = 1 only");
  const double period = s.periods[0];
  const bool exact = g.perturbation().is_zero();

  // Volume of the region beyond a leaf solved at radius r, with its length
  // and curvature offset.
  struct LeafRegion {
    RegionGeometry geom;
    double delta = 0.0;
  };
  auto leaf_region = [&](double r) {
    const CMCSolution leaf = newton_solve(g, spectral, r, opt.solve);
    const Field& u = leaf.u_perp.values();
    Field rb(u.size());
    for (size_t p = 0; p < rb.size(); ++p) rb[p] = r + u[p];
    const Field du = sp.deriv(u, 0);
    LeafRegion out;
    out.geom = graph_region(g, sp, rb, du, opt.r_truncate, opt.quad_step);
    out.delta = leaf.delta;
    return out;
  };
  auto slice_region = [&](double R) {
    const Field rb(s.total(), R);
    const Field du(s.total(), 0.0);
    return graph_region(g, sp, rb, du, opt.r_truncate, opt.quad_step);
  };

  // Bisection on a decreasing volume function V(r) = v.
  auto volume_solve = [&](auto&& volume_of, double v) {
    double lo = std::log(period / v) - 0.7;
    double hi = std::log(period / v) + 0.7;
    lo = std::max(lo, g.r_min());
    hi = std::min(hi, g.r_max());
    double vlo = volume_of(lo), vhi = volume_of(hi);
    if (!(vlo >= v && v >= vhi))
      throw GeometryError("volume not bracketed inside the chart");
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double vm = volume_of(mid);
      if (std::abs(vm - v) <= 1e-11 * v || hi - lo < 1e-14) return mid;
      (vm > v ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };

  std::vector<IsoperimetricSample> samples;
  samples.reserve(v_grid.size());
  for (double v : v_grid) {
    IsoperimetricSample sample;
    sample.v = v;

    // slice family
    if (exact) {
      sample.slice_region = slice_region_profile(v, period);
    } else {
      const double R =
          volume_solve([&](double r) { return slice_region(r).volume; }, v);
      const RegionGeometry geom = slice_region(R);
      sample.slice_region.parameter = R;
      sample.slice_region.length = geom.length;
      sample.slice_region.H = mean_curvature(g, R, GraphFunction::zero(spectral)).H_mean;
    }

    // leaf family (volume-parameterized through per-radius solves)
    const double rv =
        volume_solve([&](double r) { return leaf_region(r).geom.volume; }, v);
    const LeafRegion lr = leaf_region(rv);
    sample.cmc_leaf_region.parameter = rv;
    sample.cmc_leaf_region.length = lr.geom.length;
    sample.cmc_leaf_region.H = -double(s.n) + lr.delta;
    sample.leaf_available = true;

    // disk family; keep the center shallow enough that the disk embeds
    const double rho = std::acosh(1.0 + v / (2.0 * kPi));
    const double cap = std::log(period / (2.0 * std::sinh(rho))) - 0.02;
    const double center = std::min(opt.disk_center, cap);
    sample.geodesic_disk = geodesic_disk_profile(v, center, period);

    if (exact) {
      sample.best = "slice_region";
      double best = sample.slice_region.length;
      if (sample.cmc_leaf_region.length < best - 1e-9) {
        best = sample.cmc_leaf_region.length;
        sample.best = "cmc_leaf_region";
      }
      if (sample.geodesic_disk.length < best - 1e-9) sample.best = "geodesic_disk";
    } else {
      sample.best = sample.cmc_leaf_region.length <=
                            sample.geodesic_disk.length + 1e-9
                        ? "cmc_leaf_region"
                        : "geodesic_disk";
    }
    samples.push_back(std::move(sample));
  }
  return samples;
}

}  // namespace cusp
