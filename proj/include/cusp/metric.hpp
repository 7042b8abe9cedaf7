#pragma once

#include <array>
#include <functional>

#include "cusp/perturbation.hpp"
#include "cusp/slice.hpp"

namespace cusp {

/// Dense symmetric matrix of dimension m <= 3 with value semantics.
struct SmallMat {
  int m = 0;
  std::array<std::array<double, 3>, 3> a{};

  double& operator()(int i, int j) { return a[i][j]; }
  double operator()(int i, int j) const { return a[i][j]; }

  double det() const;
  SmallMat inverse() const;  // throws GeometryError on singular input
  bool positive_definite() const;
};

/// Christoffel symbols Gamma^k_{ij}, k outermost.
struct Christoffels {
  int m = 0;
  std::array<SmallMat, 3> g;  // g[k](i,j) = Gamma^k_{ij}

  double operator()(int k, int i, int j) const { return g[k](i, j); }
};

/// The ambient metric g = dr^2 + e^{-2r} gbar + h on the end (0,infty) x Sigma
/// in coordinates (r, x_1, ..., x_n). With zero h this is exactly
/// diag(1, e^{-2r}, ...). All evaluators are pure; objects are immutable
/// after construction.
class AmbientMetric {
 public:
  AmbientMetric(SliceSpec slice, PerturbationField h, double r_min = 2.0,
                double r_max = 8.0);

  const SliceSpec& slice() const { return slice_; }
  const PerturbationField& perturbation() const { return h_; }
  int dim() const { return slice_.n + 1; }
  double r_min() const { return r_min_; }
  double r_max() const { return r_max_; }

  /// Graphs may use a small pad beyond the working range so that scaled
  /// variations at the range boundary stay evaluable; positive definiteness
  /// is verified on the padded range.
  static constexpr double kChartPad = 0.1;
  bool in_chart(double r) const {
    return r >= std::max(r_min_ - kChartPad, 1e-9) && r <= r_max_ + kChartPad;
  }

  /// g_ij(r, x); throws GeometryError("metric degenerate at point") if the
  /// result is not positive definite.
  SmallMat metric_at(double r, const double* x) const;

  /// dg[a](i,j) = d_a g_ij, a = 0 for r, 1..n for slice axes.
  void metric_deriv(double r, const double* x, std::array<SmallMat, 3>& dg) const;
  void metric_second_deriv(double r, const double* x,
                           std::array<std::array<SmallMat, 3>, 3>& ddg) const;

  /// Christoffel symbols from the standard formula with analytic dg.
  Christoffels christoffel_at(double r, const double* x) const;

  /// dgamma[a] = d_a Gamma, assembled from analytic ddg.
  void christoffel_deriv(double r, const double* x,
                         std::array<Christoffels, 3>& dgamma) const;

  /// Ricci curvature contracted twice with a g-unit vector nu (components in
  /// coordinates (r, x)). Throws GeometryError("normal not normalized") when
  /// |g(nu,nu) - 1| > 1e-8.
  double ricci_normal(double r, const double* x, const double* nu) const;

 private:
  SmallMat metric_raw(double r, const double* x) const;

  SliceSpec slice_;
  PerturbationField h_;
  double r_min_, r_max_;
};

/// Warping profile phi(r) with derivatives, for the warped-product
/// linearization formula.
struct Warping {
  std::function<double(double)> phi, dphi, ddphi;

  static Warping exponential();  // phi = e^{-r}, the cusp model
  static Warping cone();         // phi = r
};

}  // namespace cusp
