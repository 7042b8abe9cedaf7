#pragma once

#include "cusp/solver.hpp"

namespace cusp {

/// Boundary length and mean curvature of one candidate region at a fixed
/// enclosed volume (n = 1 only: the end is 2-dimensional).
struct CandidateProfile {
  double length = 0.0;
  double H = 0.0;
  double parameter = 0.0;  // region radius R, leaf radius r_v, or disk center
};

/// Comparison of the candidate families at one volume.
struct IsoperimetricSample {
  double v = 0.0;
  CandidateProfile slice_region;
  CandidateProfile cmc_leaf_region;
  CandidateProfile geodesic_disk;
  std::string best;
  bool leaf_available = false;
};

/// Super-level-set region [R, infty) x S^1 of the exact model: both the
/// enclosed volume and the boundary length equal L e^{-R}, so length = v
/// identically and H = -1.
CandidateProfile slice_region_profile(double v, double period = 2.0 * kPi);

/// Geodesic disk in the curvature -1 model: v = 2 pi (cosh rho - 1),
/// length = 2 pi sinh rho = sqrt(v^2 + 4 pi v), H = -coth rho. The disk must
/// embed at the chosen center: its radius may not exceed the injectivity
/// radius asinh((L/2) e^{-center}) nor the distance to the r = 0 boundary.
/// Throws GeometryError("competitor not embeddable") otherwise.
CandidateProfile geodesic_disk_profile(double v, double center_r = 4.0,
                                       double period = 2.0 * kPi);

struct IsoperimetricOptions {
  double disk_center = 4.0;    // clamped down automatically when too deep
  double r_truncate = 20.0;    // quadrature tail cutoff
  double quad_step = 0.02;     // radial Simpson step
  SolveOptions solve;
};

/// Candidate comparison over a volume grid. With zero perturbation the
/// closed forms are used for the slice family and the winner is taken among
/// all three families (ties resolve toward the slice). With a perturbation
/// the leaf family (solved per radius, volume root-solved) is compared
/// against the disk closed forms.
std::vector<IsoperimetricSample> compare_profiles(
    const AmbientMetric& g, std::shared_ptr<const Spectral> spectral,
    const std::vector<double>& v_grid, const IsoperimetricOptions& opt = {});

}  // namespace cusp
