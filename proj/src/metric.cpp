#include "cusp/metric.hpp"

#include <cmath>

namespace cusp {

double SmallMat::det() const {
  if (m == 1) return a[0][0];
  if (m == 2) return a[0][0] * a[1][1] - a[0][1] * a[1][0];
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

SmallMat SmallMat::inverse() const {
  SmallMat inv;
  inv.m = m;
  const double d = det();
  if (d == 0.0 || !std::isfinite(d)) throw GeometryError("metric degenerate at point");
  if (m == 1) {
    inv(0, 0) = 1.0 / a[0][0];
    return inv;
  }
  if (m == 2) {
    inv(0, 0) = a[1][1] / d;
    inv(1, 1) = a[0][0] / d;
    inv(0, 1) = -a[0][1] / d;
    inv(1, 0) = -a[1][0] / d;
    return inv;
  }
  // cofactor expansion, m == 3
  inv(0, 0) = (a[1][1] * a[2][2] - a[1][2] * a[2][1]) / d;
  inv(0, 1) = (a[0][2] * a[2][1] - a[0][1] * a[2][2]) / d;
  inv(0, 2) = (a[0][1] * a[1][2] - a[0][2] * a[1][1]) / d;
  inv(1, 0) = (a[1][2] * a[2][0] - a[1][0] * a[2][2]) / d;
  inv(1, 1) = (a[0][0] * a[2][2] - a[0][2] * a[2][0]) / d;
  inv(1, 2) = (a[0][2] * a[1][0] - a[0][0] * a[1][2]) / d;
  inv(2, 0) = (a[1][0] * a[2][1] - a[1][1] * a[2][0]) / d;
  inv(2, 1) = (a[0][1] * a[2][0] - a[0][0] * a[2][1]) / d;
  inv(2, 2) = (a[0][0] * a[1][1] - a[0][1] * a[1][0]) / d;
  return inv;
}

bool SmallMat::positive_definite() const {
  // Sylvester criterion on leading minors.
  if (a[0][0] <= 0.0) return false;
  if (m >= 2 && a[0][0] * a[1][1] - a[0][1] * a[1][0] <= 0.0) return false;
  if (m >= 3 && det() <= 0.0) return false;
  return true;
}

AmbientMetric::AmbientMetric(SliceSpec slice, PerturbationField h, double r_min,
                             double r_max)
    : slice_(std::move(slice)), h_(std::move(h)), r_min_(r_min), r_max_(r_max) {
  if (!(r_min_ < r_max_) || !(r_min_ > 0.0))
    throw ConfigError(0, "working radius range must satisfy 0 < r_min < r_max");
  if (!(h_.slice() == slice_))
    throw ConfigError(0, "perturbation was built for a different slice");
  // h decays in r, so the range endpoints dominate; sample both over the grid.
  if (!h_.is_zero()) {
    double x[2] = {0.0, 0.0};
    for (double r : {std::max(r_min_ - kChartPad, 1e-9), r_max_ + kChartPad}) {
      for (int i0 = 0; i0 < slice_.grid[0]; ++i0) {
        x[0] = slice_.coord(0, i0);
        const int n1 = slice_.n == 2 ? slice_.grid[1] : 1;
        for (int i1 = 0; i1 < n1; ++i1) {
          if (slice_.n == 2) x[1] = slice_.coord(1, i1);
          metric_at(r, x);  // throws if not positive definite
        }
      }
    }
  }
}

SmallMat AmbientMetric::metric_raw(double r, const double* x) const {
  SmallMat g;
  g.m = dim();
  const double w = std::exp(-2.0 * r);
  g(0, 0) = 1.0;
  for (int i = 1; i < g.m; ++i) g(i, i) = w;
  if (!h_.is_zero()) {
    for (int i = 0; i < g.m; ++i)
      for (int j = i; j < g.m; ++j) {
        const double v = h_.component(i, j, r, x);
        g(i, j) += v;
        if (i != j) g(j, i) += v;
      }
  }
  return g;
}

SmallMat AmbientMetric::metric_at(double r, const double* x) const {
  SmallMat g = metric_raw(r, x);
  if (!g.positive_definite()) throw GeometryError("metric degenerate at point");
  return g;
}

void AmbientMetric::metric_deriv(double r, const double* x,
                                 std::array<SmallMat, 3>& dg) const {
  const int m = dim();
  const double w = std::exp(-2.0 * r);
  for (int a = 0; a < m; ++a) {
    dg[a] = SmallMat{};
    dg[a].m = m;
  }
  for (int i = 1; i < m; ++i) dg[0](i, i) = -2.0 * w;
  if (!h_.is_zero()) {
    for (int a = 0; a < m; ++a)
      for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
          const double v = h_.d(i, j, a, r, x);
          dg[a](i, j) += v;
          if (i != j) dg[a](j, i) += v;
        }
  }
}

void AmbientMetric::metric_second_deriv(
    double r, const double* x, std::array<std::array<SmallMat, 3>, 3>& ddg) const {
  const int m = dim();
  const double w = std::exp(-2.0 * r);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      ddg[a][b] = SmallMat{};
      ddg[a][b].m = m;
    }
  for (int i = 1; i < m; ++i) ddg[0][0](i, i) = 4.0 * w;
  if (!h_.is_zero()) {
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        for (int i = 0; i < m; ++i)
          for (int j = i; j < m; ++j) {
            const double v = h_.dd(i, j, a, b, r, x);
            ddg[a][b](i, j) += v;
            if (i != j) ddg[a][b](j, i) += v;
          }
  }
}

Christoffels AmbientMetric::christoffel_at(double r, const double* x) const {
  const int m = dim();
  const SmallMat g = metric_at(r, x);
  const SmallMat ginv = g.inverse();
  std::array<SmallMat, 3> dg;
  metric_deriv(r, x, dg);

  Christoffels gamma;
  gamma.m = m;
  for (int k = 0; k < m; ++k) {
    gamma.g[k].m = m;
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) {
        double s = 0.0;
        for (int l = 0; l < m; ++l)
          s += ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        gamma.g[k](i, j) = 0.5 * s;
        gamma.g[k](j, i) = 0.5 * s;
      }
  }
  return gamma;
}

void AmbientMetric::christoffel_deriv(double r, const double* x,
                                      std::array<Christoffels, 3>& dgamma) const {
  const int m = dim();
  const SmallMat g = metric_at(r, x);
  const SmallMat ginv = g.inverse();
  std::array<SmallMat, 3> dg;
  metric_deriv(r, x, dg);
  std::array<std::array<SmallMat, 3>, 3> ddg;
  metric_second_deriv(r, x, ddg);

  // d_a g^{kl} = -g^{kp} (d_a g_pq) g^{ql}
  std::array<SmallMat, 3> dginv;
  for (int a = 0; a < m; ++a) {
    dginv[a].m = m;
    for (int k = 0; k < m; ++k)
      for (int l = 0; l < m; ++l) {
        double s = 0.0;
        for (int p = 0; p < m; ++p)
          for (int q = 0; q < m; ++q) s += ginv(k, p) * dg[a](p, q) * ginv(q, l);
        dginv[a](k, l) = -s;
      }
  }

  for (int a = 0; a < m; ++a) {
    dgamma[a].m = m;
    for (int k = 0; k < m; ++k) {
      dgamma[a].g[k].m = m;
      for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
          double s = 0.0;
          for (int l = 0; l < m; ++l) {
            s += dginv[a](k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
            s += ginv(k, l) *
                 (ddg[a][i](j, l) + ddg[a][j](i, l) - ddg[a][l](i, j));
          }
          dgamma[a].g[k](i, j) = 0.5 * s;
          dgamma[a].g[k](j, i) = 0.5 * s;
        }
    }
  }
}

double AmbientMetric::ricci_normal(double r, const double* x,
                                   const double* nu) const {
  const int m = dim();
  const SmallMat g = metric_at(r, x);
  double norm = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) norm += g(i, j) * nu[i] * nu[j];
  if (std::abs(norm - 1.0) > 1e-8) throw GeometryError("normal not normalized");

  const Christoffels gamma = christoffel_at(r, x);
  std::array<Christoffels, 3> dgamma;
  christoffel_deriv(r, x, dgamma);

  // R_ab = d_k Gamma^k_ab - d_b Gamma^k_ak + Gamma^k_kl Gamma^l_ab
  //        - Gamma^k_bl Gamma^l_ak
  double ric = 0.0;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      double R = 0.0;
      for (int k = 0; k < m; ++k) {
        R += dgamma[k].g[k](a, b) - dgamma[b].g[k](a, k);
        for (int l = 0; l < m; ++l)
          R += gamma(k, k, l) * gamma(l, a, b) - gamma(k, b, l) * gamma(l, a, k);
      }
      ric += R * nu[a] * nu[b];
    }
  return ric;
}

Warping Warping::exponential() {
  return Warping{[](double r) { return std::exp(-r); },
                 [](double r) { return -std::exp(-r); },
                 [](double r) { return std::exp(-r); }};
}

Warping Warping::cone() {
  return Warping{[](double r) { return r; }, [](double) { return 1.0; },
                 [](double) { return 0.0; }};
}

}  // namespace cusp
