#include "cusp/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "cusp/fft.hpp"

namespace cusp {

Spectral::Spectral(SliceSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  for (int d = 0; d < spec_.n; ++d) {
    const int N = spec_.grid[d];
    omega_[d].resize(N);
    for (int i = 0; i < N; ++i) {
      const int k = (i <= N / 2) ? i : i - N;
      omega_[d][i] = 2.0 * kPi * k / spec_.periods[d];
    }
  }
}

double Spectral::omega(int d, int i) const { return omega_[d][i]; }

Field Spectral::apply(const Field& f, const Multiplier& m) const {
  const int n0 = spec_.grid[0];
  const int n1 = spec_.n == 2 ? spec_.grid[1] : 1;
  std::vector<std::complex<double>> buf(f.begin(), f.end());
  fft::dft(n0, n1, buf.data(), -1);
  for (int i = 0; i < n0; ++i)
    for (int j = 0; j < n1; ++j) buf[long(i) * n1 + j] *= m(i, j);
  fft::dft(n0, n1, buf.data(), +1);
  Field out(f.size());
  const double scale = 1.0 / (double(n0) * n1);
  for (size_t p = 0; p < out.size(); ++p) out[p] = buf[p].real() * scale;
  return out;
}

Field Spectral::deriv(const Field& f, int d) const {
  const int nyq = spec_.grid[d] / 2;
  return apply(f, [&](int i, int j) -> std::complex<double> {
    const int idx = d == 0 ? i : j;
    if (idx == nyq) return {0.0, 0.0};
    return {0.0, omega_[d][idx]};
  });
}

Field Spectral::deriv2(const Field& f, int d, int e) const {
  if (d == e) {
    return apply(f, [&](int i, int j) -> std::complex<double> {
      const int idx = d == 0 ? i : j;
      const double w = omega_[d][idx];
      return {-w * w, 0.0};
    });
  }
  const int nyq0 = spec_.grid[0] / 2;
  const int nyq1 = spec_.grid[1] / 2;
  return apply(f, [&](int i, int j) -> std::complex<double> {
    if (i == nyq0 || j == nyq1) return {0.0, 0.0};
    return {-omega_[0][i] * omega_[1][j], 0.0};
  });
}

Field Spectral::laplacian(const Field& f) const {
  return apply(f, [&](int i, int j) -> std::complex<double> {
    double s = omega_[0][i] * omega_[0][i];
    if (spec_.n == 2) s += omega_[1][j] * omega_[1][j];
    return {-s, 0.0};
  });
}

Field Spectral::solve_poisson(const Field& f) const {
  const double m = mean(f);
  if (std::abs(m) > 1e-10 * std::max(sup_norm(f), 1e-300))
    throw GeometryError("projection violated");
  return apply(f, [&](int i, int j) -> std::complex<double> {
    double s = omega_[0][i] * omega_[0][i];
    if (spec_.n == 2) s += omega_[1][j] * omega_[1][j];
    if (s == 0.0) return {0.0, 0.0};  // kill the kernel mode
    return {-1.0 / s, 0.0};
  });
}

Field Spectral::solve_helmholtz(const Field& f, double shift) const {
  if (!(shift > 0.0)) throw GeometryError("helmholtz shift must be positive");
  return apply(f, [&](int i, int j) -> std::complex<double> {
    double s = omega_[0][i] * omega_[0][i];
    if (spec_.n == 2) s += omega_[1][j] * omega_[1][j];
    return {1.0 / (s + shift), 0.0};
  });
}

Field Spectral::band_limit(const Field& f) const {
  const int nyq0 = spec_.grid[0] / 2;
  const int nyq1 = spec_.n == 2 ? spec_.grid[1] / 2 : -1;
  return apply(f, [&](int i, int j) -> std::complex<double> {
    if (i == nyq0 || j == nyq1) return {0.0, 0.0};
    return {1.0, 0.0};
  });
}

Field Spectral::project_meanzero(const Field& f) const {
  const double m = mean(f);
  Field out(f);
  for (double& x : out) x -= m;
  return out;
}

double Spectral::mean(const Field& f) const {
  double s = 0.0;
  for (double x : f) s += x;
  return s / double(f.size());
}

double Spectral::sup_norm(const Field& f) const {
  double s = 0.0;
  for (double x : f) s = std::max(s, std::abs(x));
  return s;
}

DiscreteNorms Spectral::norms(const Field& f) const {
  DiscreteNorms out;
  out.sup = sup_norm(f);

  std::array<Field, 2> g;
  for (int d = 0; d < spec_.n; ++d) g[d] = deriv(f, d);
  for (size_t p = 0; p < f.size(); ++p) {
    double s = 0.0;
    for (int d = 0; d < spec_.n; ++d) s += g[d][p] * g[d][p];
    out.grad_sup = std::max(out.grad_sup, std::sqrt(s));
  }

  // Frobenius norm of the spectral Hessian.
  std::array<std::array<Field, 2>, 2> h;
  for (int d = 0; d < spec_.n; ++d)
    for (int e = d; e < spec_.n; ++e) h[d][e] = deriv2(f, d, e);
  for (size_t p = 0; p < f.size(); ++p) {
    double s = 0.0;
    for (int d = 0; d < spec_.n; ++d)
      for (int e = d; e < spec_.n; ++e) {
        const double v = h[d][e][p];
        s += (d == e ? 1.0 : 2.0) * v * v;
      }
    out.hess_sup = std::max(out.hess_sup, std::sqrt(s));
  }

  out.n2 = std::max({out.sup, out.grad_sup, out.hess_sup});
  return out;
}

double Spectral::discrete_CL() const {
  double best = 0.0;
  const int n1 = spec_.n == 2 ? spec_.grid[1] : 1;
  for (int i = 0; i < spec_.grid[0]; ++i) {
    for (int j = 0; j < n1; ++j) {
      double s = omega_[0][i] * omega_[0][i];
      if (spec_.n == 2) s += omega_[1][j] * omega_[1][j];
      if (s == 0.0) continue;
      const double w = std::sqrt(s);
      best = std::max(best, (1.0 + w + s) / s);
    }
  }
  return best;
}

}  // namespace cusp
