#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cusp/curvature.hpp"
#include "cusp/fit.hpp"

namespace cusp {

struct SolveOptions {
  double tol = 1e-10;
  int max_iter = 200;
  double eta = 0.1;  // smallness guard on n2(u); iterates beyond it abort
};

/// One constant-mean-curvature leaf: the graph of the mean-zero u over the
/// slice at radius r0, with H = -n + delta spatially constant up to tol.
struct CMCSolution {
  double r0 = 0.0;
  GraphFunction u_perp;
  double delta = 0.0;
  int iterations = 0;
  std::vector<double> residual_history;  // sup-norm CMC residual per iterate
  std::string method;                    // "picard" or "newton"
  bool converged = false;
  double psi_residual = 0.0;             // final sup |H - mean H|
  double n2_u = 0.0;
};

/// Fixed-point iteration: each step inverts the flat Laplacian against the
/// right-hand side rebuilt from the full numerical mean curvature of the
/// current iterate, with the offset delta_j chosen so the right-hand side
/// has zero mean. Starts from u = 0.
CMCSolution picard_solve(const AmbientMetric& g,
                         std::shared_ptr<const Spectral> spectral, double r0,
                         const SolveOptions& opt = {});

/// Chord (frozen-linearization) iteration on Psi(u) = H - area-mean(H),
/// with the update operator -e^{2 r0} Lap inverted exactly in Fourier space.
CMCSolution newton_solve(const AmbientMetric& g,
                         std::shared_ptr<const Spectral> spectral, double r0,
                         const SolveOptions& opt = {});

/// Smallest Rayleigh quotient of minus the Jacobi operator
/// J = Lap_S + Ric(nu,nu) + |A|^2 over mean-zero variations of the leaf,
/// in the induced L^2 inner product. Positive means strongly stable.
/// Dense eigensolve for n = 1, preconditioned Rayleigh-quotient descent
/// for n = 2.
double jacobi_min_eigenvalue(const AmbientMetric& g, const CMCSolution& leaf);

struct FoliationLeaf {
  double r = 0.0;
  std::optional<CMCSolution> solution;  // empty when the solve failed
  std::string error;                    // failure reason when empty
  double jacobi_min = 0.0;
};

/// A family of leaves over an increasing radius grid with the foliation
/// diagnostics: the minimum of d/dr (r + u) across adjacent leaves, the
/// stability eigenvalues, and least-squares decay fits of log n2(u) and
/// log |delta| against r.
struct FoliationReport {
  std::vector<double> r_grid;
  std::vector<FoliationLeaf> leaves;
  double monotonicity_min = 0.0;
  LineFit decay_fit_u;
  LineFit decay_fit_delta;
  int failed = 0;
  bool all_converged() const { return failed == 0; }
};

enum class SolveMethod { picard, newton };

FoliationReport build_foliation(const AmbientMetric& g,
                                std::shared_ptr<const Spectral> spectral,
                                double r_min, double r_max, int steps,
                                const SolveOptions& opt = {},
                                SolveMethod method = SolveMethod::picard,
                                int threads = 1);

/// Discrete distance of g from the exact cusp metric: the sup over the grid
/// and the working radius range of e^{alpha r} |(g - g_N)_ij|.
double metric_distance_to_model(const AmbientMetric& g);

}  // namespace cusp
