#pragma once

#include <complex>
#include <functional>

#include "cusp/slice.hpp"

namespace cusp {

/// Sup norms of a field and of its spectral first and second derivatives.
/// n2 = max of the three; this is the discrete C^2 proxy used throughout.
struct DiscreteNorms {
  double sup = 0.0;
  double grad_sup = 0.0;   // pointwise Euclidean norm of the gradient
  double hess_sup = 0.0;   // pointwise Frobenius norm of the Hessian
  double n2 = 0.0;
};

/// Fourier calculus on the flat torus grid: exact derivatives and the exact
/// inverse of the Laplacian on mean-zero data. Eigenvalues are
/// lambda_k = -sum_d (2 pi k_d / L_d)^2; the kernel is the constants (k = 0).
///
/// Convention for even grids: the Nyquist mode keeps its (real) second
/// derivative multiplier but first-derivative multipliers are zeroed, the
/// usual symmetric treatment for real data. The Poisson inverse divides by
/// lambda_k on every nonzero mode, so solve followed by the Laplacian is the
/// mean-zero projection to machine precision.
///
/// Immutable after construction; evaluation methods are const and use
/// per-call workspaces, so concurrent use is safe.
class Spectral {
 public:
  explicit Spectral(SliceSpec spec);

  const SliceSpec& slice() const { return spec_; }

  Field deriv(const Field& f, int d) const;
  Field deriv2(const Field& f, int d, int e) const;
  Field laplacian(const Field& f) const;

  /// Unique mean-zero u with Laplacian(u) = f. Requires |mean(f)| <=
  /// 1e-10 * sup|f|; throws GeometryError("projection violated") otherwise.
  Field solve_poisson(const Field& f) const;

  /// Unique u with (-Lap + shift) u = f, shift > 0.
  Field solve_helmholtz(const Field& f, double shift) const;

  /// Zeroes every Nyquist mode; band-limited fields are where the spectral
  /// derivative is an exact inverse-pair with integration.
  Field band_limit(const Field& f) const;

  Field project_meanzero(const Field& f) const;

  double mean(const Field& f) const;
  double sup_norm(const Field& f) const;
  DiscreteNorms norms(const Field& f) const;
  double n2_norm(const Field& f) const { return norms(f).n2; }

  /// Discrete stand-in for the bounded-inverse constant: the maximum over
  /// nonzero frequency vectors of (1 + |w| + |w|^2) / |lambda|, |w| the
  /// Euclidean norm of the frequency vector. An upper bound for
  /// n2(solve_poisson(f)) / sup|f| on single modes, and empirically for
  /// band-limited data.
  double discrete_CL() const;

  /// Signed angular frequency of index i along axis d (Nyquist positive).
  double omega(int d, int i) const;

 private:
  using Multiplier = std::function<std::complex<double>(int, int)>;
  Field apply(const Field& f, const Multiplier& m) const;

  SliceSpec spec_;
  std::array<std::vector<double>, 2> omega_;
};

}  // namespace cusp
