#pragma once

#include <array>
#include <string>
#include <vector>

#include "cusp/slice.hpp"

namespace cusp {

/// One separable perturbation term: coeff * e^{-rate r} * prod_d cos(w_d x_d + phase_d),
/// with w_d = 2 pi freq_d / L_d. freq = 0, phase = 0 gives a constant factor.
struct PerturbTerm {
  double coeff = 0.0;
  double rate = 0.0;
  std::array<int, 2> freq{0, 0};
  std::array<double, 2> phase{0.0, 0.0};
};

/// The metric perturbation h: a symmetric (n+1)x(n+1) array of closed-form
/// component evaluators with analytic first and second derivatives, a
/// declared decay order alpha > 4 and a declared bound constant C with
/// |h_ij(r,x)| <= C e^{-alpha r}. The constructor verifies the bound by
/// sampling the grid over a wide r range.
class PerturbationField {
 public:
  /// Component lists indexed [i][j], 0 <= i,j <= n, i <= j populated.
  using Components = std::array<std::array<std::vector<PerturbTerm>, 3>, 3>;

  PerturbationField(const SliceSpec& slice, double alpha, double amplitude,
                    Components components);

  /// Zero perturbation (the exact cusp model).
  static PerturbationField zero(const SliceSpec& slice);

  /// Catalogue families, all with every term decaying at exactly e^{-alpha r}:
  ///   zero              -- no perturbation
  ///   cos_x1            -- slice block only, profile cos x1 (mean zero on the slice)
  ///   cos_x1_minus_one  -- slice block only, profile cos x1 - 1 (negative slice mean)
  ///   mixed             -- h_00, h_0i and slice block all populated
  static PerturbationField make(const std::string& family, const SliceSpec& slice,
                                double alpha, double amplitude);

  const SliceSpec& slice() const { return slice_; }
  double alpha() const { return alpha_; }
  double amplitude() const { return amplitude_; }
  double bound_constant() const { return bound_C_; }
  bool is_zero() const { return zero_; }

  double component(int i, int j, double r, const double* x) const;
  /// First derivative along coordinate a (0 = r, 1..n = slice axes).
  double d(int i, int j, int a, double r, const double* x) const;
  double dd(int i, int j, int a, int b, double r, const double* x) const;

  /// Largest frequency appearing in any term (for dealiasing checks).
  int max_frequency() const;

 private:
  const std::vector<PerturbTerm>& terms(int i, int j) const {
    return i <= j ? components_[i][j] : components_[j][i];
  }
  void verify_decay(const SliceSpec& slice) const;

  SliceSpec slice_;
  double alpha_ = 5.0;
  double amplitude_ = 0.0;
  double bound_C_ = 0.0;
  bool zero_ = true;
  Components components_;
};

}  // namespace cusp
