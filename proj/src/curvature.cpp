#include "cusp/curvature.hpp"

#include <cmath>

namespace cusp {

namespace {

// Spectral derivative bundle of u, evaluated once per operation.
struct UDerivs {
  std::array<Field, 2> d1;
  std::array<std::array<Field, 2>, 2> d2;
  int n = 1;

  UDerivs(const Spectral& sp, const Field& u) : n(sp.slice().n) {
    for (int d = 0; d < n; ++d) d1[d] = sp.deriv(u, d);
    for (int d = 0; d < n; ++d)
      for (int e = d; e < n; ++e) d2[d][e] = sp.deriv2(u, d, e);
  }

  void at(long p, double* du, SmallMat& hess) const {
    hess.m = n;
    for (int d = 0; d < n; ++d) du[d] = d1[d][p];
    for (int d = 0; d < n; ++d)
      for (int e = d; e < n; ++e) {
        hess(d, e) = d2[d][e][p];
        hess(e, d) = d2[d][e][p];
      }
  }
};

void grid_point(const SliceSpec& s, long p, double* x) {
  if (s.n == 1) {
    x[0] = s.coord(0, int(p));
  } else {
    x[0] = s.coord(0, int(p / s.grid[1]));
    x[1] = s.coord(1, int(p % s.grid[1]));
  }
}

}  // namespace

GraphPointData graph_point(const AmbientMetric& g, double r0, const double* x,
                           double u, const double* du, const SmallMat& d2u) {
  const int n = g.slice().n;
  const int m = n + 1;
  const double r = r0 + u;
  if (!g.in_chart(r)) throw GeometryError("graph leaves chart");

  const SmallMat gm = g.metric_at(r, x);
  const SmallMat ginv = gm.inverse();
  const Christoffels gamma = g.christoffel_at(r, x);

  // dF = (1, -du); F(r, x) = r - (r0 + u(x)).
  std::array<double, 3> dF{1.0, 0.0, 0.0};
  for (int i = 0; i < n; ++i) dF[i + 1] = -du[i];

  double grad2 = 0.0;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) grad2 += ginv(a, b) * dF[a] * dF[b];
  if (!(grad2 > 0.0)) throw GeometryError("metric degenerate at point");
  const double grad = std::sqrt(grad2);

  // Coordinate Hessian of F: Hess_ab = dd F_ab - Gamma^c_ab dF_c.
  SmallMat hf;
  hf.m = m;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      double v = 0.0;
      if (a > 0 && b > 0) v = -d2u(a - 1, b - 1);
      for (int c = 0; c < m; ++c) v -= gamma(c, a, b) * dF[c];
      hf(a, b) = v;
    }

  // Frame adapted to the graph: e_i = du_i d_r + d_i.
  SmallMat hf_hat, induced;
  hf_hat.m = n;
  induced.m = n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      hf_hat(i, j) = du[i] * du[j] * hf(0, 0) + du[i] * hf(0, j + 1) +
                     du[j] * hf(i + 1, 0) + hf(i + 1, j + 1);
      induced(i, j) = du[i] * du[j] * gm(0, 0) + du[i] * gm(0, j + 1) +
                      du[j] * gm(i + 1, 0) + gm(i + 1, j + 1);
    }

  const double det = induced.det();
  if (!(det > 0.0)) throw GeometryError("induced metric singular");

  GraphPointData out;
  out.grad_F = grad;
  out.sqrt_det_induced = std::sqrt(det);
  out.induced_inv = induced.inverse();
  out.second_fundamental.m = n;

  double trace = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      out.second_fundamental(i, j) = hf_hat(i, j) / grad;
      trace += out.induced_inv(i, j) * hf_hat(i, j);
    }
  out.H = trace / grad;

  for (int a = 0; a < m; ++a) {
    double v = 0.0;
    for (int b = 0; b < m; ++b) v += ginv(a, b) * dF[b];
    out.normal[a] = v / grad;
  }
  return out;
}

CurvatureReport mean_curvature(const AmbientMetric& g, double r0,
                               const GraphFunction& u) {
  const Spectral& sp = u.spectral();
  const SliceSpec& s = sp.slice();
  const int n = s.n;
  const long total = s.total();
  const UDerivs ud(sp, u.values());

  CurvatureReport rep;
  rep.H_field.resize(total);
  rep.EF0.resize(total);
  rep.EH0.resize(total);

  double x[2], du[2];
  SmallMat d2u;
  double area = 0.0, integral = 0.0;
  for (long p = 0; p < total; ++p) {
    grid_point(s, p, x);
    ud.at(p, du, d2u);
    const GraphPointData pt = graph_point(g, r0, x, u.values()[p], du, d2u);
    rep.H_field[p] = pt.H;
    area += pt.sqrt_det_induced;
    integral += pt.H * pt.sqrt_det_induced;
  }
  rep.H_mean = integral / area;
  for (long p = 0; p < total; ++p)
    rep.residual = std::max(rep.residual, std::abs(rep.H_field[p] - rep.H_mean));

  // Residual error fields at u = 0: EF0 from |grad F|^2, EH0 from the
  // deviation of the slice curvature from -n.
  const double du0[2] = {0.0, 0.0};
  SmallMat zero2;
  zero2.m = n;
  for (long p = 0; p < total; ++p) {
    grid_point(s, p, x);
    const GraphPointData pt = graph_point(g, r0, x, 0.0, du0, zero2);
    rep.EF0[p] = pt.grad_F * pt.grad_F - 1.0;
    rep.EH0[p] = pt.grad_F * pt.H + double(n);
  }
  return rep;
}

Field mean_curvature_model(double r0, const GraphFunction& u) {
  const Spectral& sp = u.spectral();
  const SliceSpec& s = sp.slice();
  const int n = s.n;
  const long total = s.total();
  const UDerivs ud(sp, u.values());

  Field H(total);
  double du[2];
  SmallMat d2u;
  for (long p = 0; p < total; ++p) {
    ud.at(p, du, d2u);
    const double r = r0 + u.values()[p];
    const double e2r = std::exp(2.0 * r);

    double grad2 = 0.0, lap = 0.0, hess_grad = 0.0;
    for (int d = 0; d < n; ++d) {
      grad2 += du[d] * du[d];
      lap += d2u(d, d);
      for (int e = 0; e < n; ++e) hess_grad += d2u(d, e) * du[d] * du[e];
    }
    const double q = 1.0 + e2r * grad2;
    H[p] = (-e2r * lap + e2r * e2r * hess_grad / q - e2r * grad2 / q - double(n)) /
           std::sqrt(q);
  }
  return H;
}

namespace {

Field scaled_H(const AmbientMetric& g, double r0, const GraphFunction& u, double t) {
  return mean_curvature(g, r0, u.scaled(t)).H_field;
}

// Central difference with one Richardson step: (4 D(h/2) - D(h)) / 3.
Field first_t_derivative(const AmbientMetric& g, double r0, const GraphFunction& u,
                         double h) {
  const long total = u.slice().total();
  Field out(total);
  const Field hp = scaled_H(g, r0, u, h), hm = scaled_H(g, r0, u, -h);
  const Field hp2 = scaled_H(g, r0, u, 0.5 * h), hm2 = scaled_H(g, r0, u, -0.5 * h);
  for (long p = 0; p < total; ++p) {
    const double d1 = (hp[p] - hm[p]) / (2.0 * h);
    const double d2 = (hp2[p] - hm2[p]) / h;
    out[p] = (4.0 * d2 - d1) / 3.0;
  }
  return out;
}

Field second_t_derivative(const AmbientMetric& g, double r0, const GraphFunction& u,
                          double h) {
  const long total = u.slice().total();
  Field out(total);
  const Field h0 = scaled_H(g, r0, u, 0.0);
  const Field hp = scaled_H(g, r0, u, h), hm = scaled_H(g, r0, u, -h);
  const Field hp2 = scaled_H(g, r0, u, 0.5 * h), hm2 = scaled_H(g, r0, u, -0.5 * h);
  for (long p = 0; p < total; ++p) {
    const double d1 = (hp[p] - 2.0 * h0[p] + hm[p]) / (h * h);
    const double d2 = (hp2[p] - 2.0 * h0[p] + hm2[p]) / (0.25 * h * h);
    out[p] = (4.0 * d2 - d1) / 3.0;
  }
  return out;
}

}  // namespace

Field linearized_mc(const AmbientMetric& g, double r0, const GraphFunction& u,
                    double step) {
  return first_t_derivative(g, r0, u, step);
}

QuadraticPart quadratic_part(const AmbientMetric& g, double r0,
                             const GraphFunction& u, double step) {
  const Spectral& sp = u.spectral();
  const SliceSpec& s = sp.slice();
  const long total = s.total();
  const int n = s.n;
  const double e2r0 = std::exp(2.0 * r0);

  QuadraticPart out;
  out.second_derivative = second_t_derivative(g, r0, u, step);

  const Field EF0 = mean_curvature(g, r0, GraphFunction::zero(u.spectral_ptr())).EF0;
  const Field lap = sp.laplacian(u.values());
  std::array<Field, 2> du;
  for (int d = 0; d < n; ++d) du[d] = sp.deriv(u.values(), d);

  out.bracket.resize(total);
  out.remainder.resize(total);
  for (long p = 0; p < total; ++p) {
    double grad2 = 0.0;
    for (int d = 0; d < n; ++d) grad2 += du[d][p] * du[d][p];
    out.bracket[p] = -4.0 * e2r0 * u.values()[p] * lap[p] - 2.0 * e2r0 * grad2 +
                     double(n) * e2r0 * grad2 / (1.0 + EF0[p]);
    out.remainder[p] =
        std::sqrt(1.0 + EF0[p]) * out.second_derivative[p] - out.bracket[p];
  }
  return out;
}

double taylor_residual(const AmbientMetric& g, double r0, const GraphFunction& u,
                       double t) {
  const long total = u.slice().total();
  const Field h0 = scaled_H(g, r0, u, 0.0);
  const Field ht = scaled_H(g, r0, u, t);
  const Field L = first_t_derivative(g, r0, u, 1e-5);
  const Field Q = second_t_derivative(g, r0, u, 1e-5);
  double rem = 0.0;
  for (long p = 0; p < total; ++p) {
    const double model = h0[p] + t * L[p] + 0.5 * t * t * Q[p];
    rem = std::max(rem, std::abs(ht[p] - model));
  }
  return rem;
}

Field warped_linearization(const Warping& w, double r, const GraphFunction& u) {
  const Spectral& sp = u.spectral();
  const int n = sp.slice().n;
  const double phi = w.phi(r);
  if (!(phi > 0.0)) throw GeometryError("warping must be positive");
  const double c0 = w.dphi(r) * w.dphi(r) - phi * w.ddphi(r);
  const Field lap = sp.laplacian(u.values());
  Field out(u.values().size());
  for (size_t p = 0; p < out.size(); ++p)
    out[p] = -(lap[p] + double(n) * u.values()[p] * c0) / (phi * phi);
  return out;
}

}  // namespace cusp
