#pragma once

#include "cusp/graph_function.hpp"
#include "cusp/metric.hpp"

namespace cusp {

/// Pointwise data of the graph r = r0 + u(x) at one grid node: the mean
/// curvature, unit normal, second fundamental form and induced metric built
/// from the level-set function F(r, x) = r - (r0 + u(x)).
struct GraphPointData {
  double H = 0.0;
  double grad_F = 0.0;              // |grad F|_g
  double sqrt_det_induced = 0.0;    // area element of the graph
  std::array<double, 3> normal{};   // unit normal components (r, x)
  SmallMat induced_inv;             // hat g^{ij}, n x n
  SmallMat second_fundamental;      // II_ij, n x n
};

GraphPointData graph_point(const AmbientMetric& g, double r0, const double* x,
                           double u, const double* du, const SmallMat& d2u);

/// Mean curvature of the graph over the slice grid, with the residual error
/// fields at u = 0 extracted numerically.
struct CurvatureReport {
  Field H_field;
  double H_mean = 0.0;    // area-weighted over the induced volume form
  double residual = 0.0;  // sup |H - H_mean|
  Field EF0;              // |grad F|^2 - 1 at u = 0
  Field EH0;              // sqrt(1 + EF0) * H(r0, 0, g) + n
};

/// Full graph mean curvature H(r0, u, g) from the level-set assembly. Sign
/// convention: slices of the unperturbed metric have H = -n.
CurvatureReport mean_curvature(const AmbientMetric& g, double r0,
                               const GraphFunction& u);

/// Closed form for the unperturbed metric, evaluated at r = r0 + u(x)
/// pointwise with spectral derivatives of u. Independent oracle for
/// mean_curvature with zero perturbation.
Field mean_curvature_model(double r0, const GraphFunction& u);

/// d/dt H(r0, t u, g) at t = 0 by central differences in t with one
/// Richardson step (default steps 1e-5 and 5e-6). For zero perturbation this
/// equals -e^{2 r0} Lap(u).
Field linearized_mc(const AmbientMetric& g, double r0, const GraphFunction& u,
                    double step = 1e-5);

/// Second t-derivative of the mean curvature of the scaled graph, both as
/// the closed-form quadratic bracket (with the residual field EF0 inserted
/// and the remainder set to zero) and as the finite-difference second
/// derivative. Their gap, premultiplied by sqrt(1 + EF0), is the numerical
/// remainder term.
struct QuadraticPart {
  Field bracket;          // -4 e^{2r0} u Lap u - 2 e^{2r0}|du|^2 + n e^{2r0}|du|^2/(1+EF0)
  Field second_derivative;
  Field remainder;        // sqrt(1+EF0) * second_derivative - bracket
};
QuadraticPart quadratic_part(const AmbientMetric& g, double r0,
                             const GraphFunction& u, double step = 1e-5);

/// Sup norm of H(r0, t u, g) minus its second-order expansion at t = 0,
/// with the first and second coefficients from the finite-difference
/// derivatives above.
double taylor_residual(const AmbientMetric& g, double r0, const GraphFunction& u,
                       double t);

/// Linearized mean curvature operator of a general warped product
/// dr^2 + phi(r)^2 gbar:  -phi^{-2} (Lap u + n u ((phi')^2 - phi phi'')).
/// For phi = e^{-r} the zeroth-order coefficient vanishes identically.
Field warped_linearization(const Warping& w, double r, const GraphFunction& u);

}  // namespace cusp
