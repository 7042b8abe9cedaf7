#include "cusp/perturbation.hpp"

#include <cmath>

namespace cusp {

namespace {

// Value and first/second derivatives of one trig factor cos(w x + phase).
struct FactorDerivs {
  double v, d1, d2;
};

FactorDerivs trig_factor(int freq, double phase, double period, double x) {
  if (freq == 0 && phase == 0.0) return {1.0, 0.0, 0.0};
  const double w = 2.0 * kPi * freq / period;
  const double a = w * x + phase;
  return {std::cos(a), -w * std::sin(a), -w * w * std::cos(a)};
}

}  // namespace

PerturbationField::PerturbationField(const SliceSpec& slice, double alpha,
                                     double amplitude, Components components)
    : slice_(slice), alpha_(alpha), amplitude_(amplitude),
      components_(std::move(components)) {
  if (!(alpha_ > 4.0))
    throw ConfigError(0, "perturbation decay order alpha must exceed 4");
  const int m = slice_.n + 1;
  zero_ = true;
  bound_C_ = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      double c = 0.0;
      for (const auto& t : components_[i][j]) {
        if (t.coeff != 0.0) zero_ = false;
        if (t.rate < alpha_ - 1e-12)
          throw ConfigError(0, "perturbation term decays slower than declared alpha");
        c += std::abs(t.coeff);
      }
      bound_C_ = std::max(bound_C_, c);
    }
  }
  if (!zero_) verify_decay(slice_);
}

void PerturbationField::verify_decay(const SliceSpec& slice) const {
  // Sample e^{alpha r} |h_ij| over the grid and a wide range of radii.
  const int m = slice.n + 1;
  double x[2] = {0.0, 0.0};
  for (int s = 0; s <= 48; ++s) {
    const double r = 0.5 + s * 0.25;
    const double growth = std::exp(alpha_ * r);
    for (int i0 = 0; i0 < slice.grid[0]; ++i0) {
      x[0] = slice.coord(0, i0);
      const int n1 = slice.n == 2 ? slice.grid[1] : 1;
      for (int i1 = 0; i1 < n1; ++i1) {
        if (slice.n == 2) x[1] = slice.coord(1, i1);
        for (int i = 0; i < m; ++i)
          for (int j = i; j < m; ++j) {
            const double v = std::abs(component(i, j, r, x)) * growth;
            if (v > bound_C_ * (1.0 + 1e-9))
              throw ConfigError(0, "perturbation violates its declared decay bound");
          }
      }
    }
  }
}

double PerturbationField::component(int i, int j, double r, const double* x) const {
  double s = 0.0;
  for (const auto& t : terms(i, j)) {
    double v = t.coeff * std::exp(-t.rate * r);
    for (int d = 0; d < slice_.n; ++d)
      v *= trig_factor(t.freq[d], t.phase[d], slice_.periods[d], x[d]).v;
    s += v;
  }
  return s;
}

double PerturbationField::d(int i, int j, int a, double r, const double* x) const {
  double s = 0.0;
  for (const auto& t : terms(i, j)) {
    double v = t.coeff * std::exp(-t.rate * r);
    if (a == 0) v *= -t.rate;
    for (int d = 0; d < slice_.n; ++d) {
      const auto f = trig_factor(t.freq[d], t.phase[d], slice_.periods[d], x[d]);
      v *= (a == d + 1) ? f.d1 : f.v;
    }
    s += v;
  }
  return s;
}

double PerturbationField::dd(int i, int j, int a, int b, double r,
                             const double* x) const {
  double s = 0.0;
  for (const auto& t : terms(i, j)) {
    double v = t.coeff * std::exp(-t.rate * r);
    if (a == 0) v *= -t.rate;
    if (b == 0) v *= -t.rate;
    for (int d = 0; d < slice_.n; ++d) {
      const auto f = trig_factor(t.freq[d], t.phase[d], slice_.periods[d], x[d]);
      const int order = int(a == d + 1) + int(b == d + 1);
      v *= order == 0 ? f.v : (order == 1 ? f.d1 : f.d2);
    }
    s += v;
  }
  return s;
}

int PerturbationField::max_frequency() const {
  int best = 0;
  const int m = slice_.n + 1;
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j)
      for (const auto& t : components_[i][j])
        for (int d = 0; d < slice_.n; ++d) best = std::max(best, std::abs(t.freq[d]));
  return best;
}

PerturbationField PerturbationField::zero(const SliceSpec& slice) {
  return PerturbationField(slice, 5.0, 0.0, Components{});
}

PerturbationField PerturbationField::make(const std::string& family,
                                          const SliceSpec& slice, double alpha,
                                          double amplitude) {
  Components c{};
  const double eps = amplitude;
  const double half_pi = 0.5 * kPi;
  auto cosx = [&](int axis) {
    PerturbTerm t;
    t.coeff = eps;
    t.rate = alpha;
    t.freq[axis] = 1;
    return t;
  };
  auto constant = [&](double coeff) {
    PerturbTerm t;
    t.coeff = coeff;
    t.rate = alpha;
    return t;
  };
  auto sinx = [&](int axis, double coeff) {
    PerturbTerm t;
    t.coeff = coeff;
    t.rate = alpha;
    t.freq[axis] = 1;
    t.phase[axis] = -half_pi;  // cos(w x - pi/2) = sin(w x)
    return t;
  };

  if (family == "zero") {
    return PerturbationField(slice, alpha, 0.0, c);
  } else if (family == "cos_x1") {
    c[1][1].push_back(cosx(0));
    if (slice.n == 2) c[2][2].push_back(cosx(1));
  } else if (family == "cos_x1_minus_one") {
    c[1][1].push_back(cosx(0));
    c[1][1].push_back(constant(-eps));
    if (slice.n == 2) {
      c[2][2].push_back(cosx(1));
      c[2][2].push_back(constant(-eps));
    }
  } else if (family == "mixed") {
    c[0][0].push_back(cosx(0));
    c[0][1].push_back(sinx(0, 0.5 * eps));
    c[1][1].push_back(cosx(0));
    c[1][1].push_back(constant(-eps));
    if (slice.n == 2) {
      c[0][2].push_back(sinx(1, 0.5 * eps));
      c[2][2].push_back(cosx(1));
      c[2][2].push_back(constant(-eps));
      PerturbTerm t;
      t.coeff = 0.25 * eps;
      t.rate = alpha;
      t.freq = {1, 1};
      c[1][2].push_back(t);
    }
  } else {
    throw ConfigError(0, "unknown perturbation family '" + family + "'");
  }
  return PerturbationField(slice, alpha, amplitude, std::move(c));
}

}  // namespace cusp
