#include "cusp/solver.hpp"

#include <Eigen/Dense>

#include <atomic>
#include <cmath>
#include <thread>

namespace cusp {

namespace {

void grid_point(const SliceSpec& s, long p, double* x) {
  if (s.n == 1) {
    x[0] = s.coord(0, int(p));
  } else {
    x[0] = s.coord(0, int(p / s.grid[1]));
    x[1] = s.coord(1, int(p % s.grid[1]));
  }
}

// Poisson solve of the mean-free part of f. A field whose oscillation sits
// at the rounding floor of its own magnitude (every exact-model iterate, for
// instance) carries pure kernel content; the correction is zero rather than
// an inversion of summation noise.
Field poisson_of_projected(const Spectral& sp, const Field& f) {
  double lo = f[0], hi = f[0];
  for (double v : f) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double scale = std::max(std::abs(lo), std::abs(hi));
  if (hi - lo <= 1e-13 * scale) return zero_field(sp.slice());
  return sp.solve_poisson(sp.project_meanzero(f));
}

struct DerivBundle {
  std::array<Field, 2> d1;
  std::array<std::array<Field, 2>, 2> d2;
  int n;

  DerivBundle(const Spectral& sp, const Field& u) : n(sp.slice().n) {
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

}  // namespace

CMCSolution picard_solve(const AmbientMetric& g,
                         std::shared_ptr<const Spectral> spectral, double r0,
                         const SolveOptions& opt) {
  const Spectral& sp = *spectral;
  const int n = sp.slice().n;
  const double damp = std::exp(-2.0 * r0);

  // sqrt(1 + EF0) weights the offset so the right-hand side stays mean free.
  const CurvatureReport base = mean_curvature(g, r0, GraphFunction::zero(spectral));
  Field W(base.EF0.size());
  for (size_t p = 0; p < W.size(); ++p) W[p] = std::sqrt(1.0 + base.EF0[p]);
  const double mean_W = sp.mean(W);

  GraphFunction u = GraphFunction::zero(spectral);
  std::vector<double> hist;
  for (int it = 1; it <= opt.max_iter; ++it) {
    const CurvatureReport rep = mean_curvature(g, r0, u);

    Field weighted(rep.H_field.size());
    for (size_t p = 0; p < weighted.size(); ++p)
      weighted[p] = W[p] * (rep.H_field[p] + double(n));
    const double delta = sp.mean(weighted) / mean_W;

    double res = 0.0;
    for (size_t p = 0; p < rep.H_field.size(); ++p)
      res = std::max(res, std::abs(rep.H_field[p] - (-double(n) + delta)));
    hist.push_back(res);

    const Field lap_u = sp.laplacian(u.values());
    Field rhs(lap_u.size());
    for (size_t p = 0; p < rhs.size(); ++p)
      rhs[p] = lap_u[p] + damp * (weighted[p] - delta * W[p]);
    const Field unew = poisson_of_projected(sp, rhs);

    double step = 0.0;
    for (size_t p = 0; p < unew.size(); ++p)
      step = std::max(step, std::abs(unew[p] - u.values()[p]));

    if (res <= opt.tol && step <= opt.tol)
      return CMCSolution{r0,       u,    delta,        it, hist,
                         "picard", true, rep.residual, u.n2()};
    u = GraphFunction(spectral, unew);
    if (u.n2() > opt.eta)
      throw SolverError("picard diverged: smallness guard exceeded", hist);
  }
  throw SolverError("picard diverged", hist);
}

CMCSolution newton_solve(const AmbientMetric& g,
                         std::shared_ptr<const Spectral> spectral, double r0,
                         const SolveOptions& opt) {
  const Spectral& sp = *spectral;
  const int n = sp.slice().n;
  const double damp = std::exp(-2.0 * r0);

  GraphFunction u = GraphFunction::zero(spectral);
  std::vector<double> hist;
  for (int it = 1; it <= opt.max_iter; ++it) {
    const CurvatureReport rep = mean_curvature(g, r0, u);
    const double delta = rep.H_mean + double(n);
    const double res = rep.residual;  // sup |Psi| = sup |H - area-mean H|
    hist.push_back(res);

    Field psi(rep.H_field.size());
    for (size_t p = 0; p < psi.size(); ++p)
      psi[p] = damp * (rep.H_field[p] - rep.H_mean);
    const Field corr = poisson_of_projected(sp, psi);

    Field unew(u.values());
    for (size_t p = 0; p < unew.size(); ++p) unew[p] += corr[p];
    unew = sp.project_meanzero(unew);

    double step = 0.0;
    for (size_t p = 0; p < unew.size(); ++p)
      step = std::max(step, std::abs(unew[p] - u.values()[p]));

    if (res <= opt.tol && step <= opt.tol)
      return CMCSolution{r0, u, delta, it, hist, "newton", true, res, u.n2()};
    u = GraphFunction(spectral, unew);
    if (u.n2() > opt.eta)
      throw SolverError("newton diverged: smallness guard exceeded", hist);
  }
  throw SolverError("newton diverged", hist);
}

namespace {

// Quadratic form of minus the Jacobi operator on the leaf:
//   Q(phi) = sum_p [ c^{ij} d_i phi d_j phi - q phi^2 w ]_p
// with c^{ij} = (induced inverse) * area element, w the area element and
// q = Ric(nu,nu) + |A|^2. The constant cell area cancels in the quotient.
struct JacobiForm {
  std::array<std::array<Field, 2>, 2> c;
  Field w, q;
  int n;
  long total;

  JacobiForm(const AmbientMetric& g, const CMCSolution& leaf) {
    const Spectral& sp = leaf.u_perp.spectral();
    const SliceSpec& s = sp.slice();
    n = s.n;
    total = s.total();
    w.resize(total);
    q.resize(total);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) c[i][j].resize(total);

    const DerivBundle ud(sp, leaf.u_perp.values());
    double x[2], du[2];
    SmallMat d2u;
    for (long p = 0; p < total; ++p) {
      grid_point(s, p, x);
      ud.at(p, du, d2u);
      const GraphPointData pt =
          graph_point(g, leaf.r0, x, leaf.u_perp.values()[p], du, d2u);
      w[p] = pt.sqrt_det_induced;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) c[i][j][p] = pt.induced_inv(i, j) * w[p];

      // |A|^2 = trace of the squared shape operator.
      double a2 = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double sij = 0.0, sji = 0.0;
          for (int k = 0; k < n; ++k) {
            sij += pt.induced_inv(i, k) * pt.second_fundamental(k, j);
            sji += pt.induced_inv(j, k) * pt.second_fundamental(k, i);
          }
          a2 += sij * sji;
        }
      const double ric = g.ricci_normal(leaf.r0 + leaf.u_perp.values()[p], x,
                                        pt.normal.data());
      q[p] = ric + a2;
    }
  }

  Field apply(const Spectral& sp, const Field& phi) const {
    Field out(total, 0.0);
    std::array<Field, 2> dphi;
    for (int j = 0; j < n; ++j) dphi[j] = sp.deriv(phi, j);
    for (int i = 0; i < n; ++i) {
      Field si(total);
      for (long p = 0; p < total; ++p) {
        double v = 0.0;
        for (int j = 0; j < n; ++j) v += c[i][j][p] * dphi[j][p];
        si[p] = v;
      }
      const Field dsi = sp.deriv(si, i);  // spectral D is antisymmetric
      for (long p = 0; p < total; ++p) out[p] -= dsi[p];
    }
    for (long p = 0; p < total; ++p) out[p] -= q[p] * w[p] * phi[p];
    return out;
  }
};

double dense_min_eigenvalue(const Spectral& sp, const JacobiForm& form) {
  const long N = form.total;
  Eigen::MatrixXd D(N, N);
  Field e(N, 0.0);
  for (long k = 0; k < N; ++k) {
    e[k] = 1.0;
    const Field col = sp.deriv(e, 0);
    for (long p = 0; p < N; ++p) D(p, k) = col[p];
    e[k] = 0.0;
  }
  Eigen::VectorXd cw(N);
  for (long p = 0; p < N; ++p) cw(p) = form.c[0][0][p];
  Eigen::MatrixXd B = D.transpose() * cw.asDiagonal() * D;

  Eigen::VectorXd qw(N), wv(N);
  for (long p = 0; p < N; ++p) {
    qw(p) = form.q[p] * form.w[p];
    wv(p) = form.w[p];
  }
  B -= Eigen::MatrixXd(qw.asDiagonal());

  // The variational space is the band-limited nonconstant trigonometric
  // polynomials; the Nyquist mode is excluded because the spectral first
  // derivative annihilates it, which would fake a null direction.
  const long M = N - 2;
  Eigen::MatrixXd V(N, M);
  for (long k = 1; k < N / 2; ++k)
    for (long p = 0; p < N; ++p) {
      const double a = 2.0 * kPi * k * p / double(N);
      V(p, 2 * (k - 1)) = std::cos(a);
      V(p, 2 * (k - 1) + 1) = std::sin(a);
    }

  // Impose the mean-zero constraint w . phi = 0 inside that space; for the
  // exact model w is constant and the constraint already holds.
  const Eigen::VectorXd c = V.transpose() * wv;
  Eigen::MatrixXd P;
  if (c.norm() <= 1e-12 * wv.norm() * std::sqrt(double(N))) {
    P = V;
  } else {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(c);
    const Eigen::MatrixXd Q = qr.householderQ();
    P = V * Q.rightCols(M - 1);
  }

  const Eigen::MatrixXd Br = P.transpose() * B * P;
  const Eigen::MatrixXd Mr = P.transpose() * wv.asDiagonal() * P;
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(
      0.5 * (Br + Br.transpose()), 0.5 * (Mr + Mr.transpose()));
  return es.eigenvalues()(0);
}

double iterative_min_eigenvalue(const Spectral& sp, const JacobiForm& form,
                                double r0) {
  const SliceSpec& s = sp.slice();
  const long N = form.total;

  auto dot = [&](const Field& a, const Field& b) {
    double v = 0.0;
    for (long p = 0; p < N; ++p) v += a[p] * b[p];
    return v;
  };
  auto m_dot = [&](const Field& a, const Field& b) {
    double v = 0.0;
    for (long p = 0; p < N; ++p) v += a[p] * form.w[p] * b[p];
    return v;
  };
  const double ww = dot(form.w, form.w);
  auto project = [&](Field& a) {
    const double c0 = dot(form.w, a) / ww;
    for (long p = 0; p < N; ++p) a[p] -= c0 * form.w[p];
  };

  // Start from the first harmonic of the slower axis, the model ground state.
  const int axis = (s.n == 2 && s.periods[1] > s.periods[0]) ? 1 : 0;
  Field x(N);
  double xc[2];
  for (long p = 0; p < N; ++p) {
    grid_point(s, p, xc);
    x[p] = std::cos(2.0 * kPi * xc[axis] / s.periods[axis]);
  }
  project(x);
  double nrm = std::sqrt(m_dot(x, x));
  for (long p = 0; p < N; ++p) x[p] /= nrm;

  // Preconditioner: inverse of the model form e^{(2-n) r0} (-Lap + m^2).
  const double scale = std::exp((2.0 - s.n) * r0);
  const double m2 = std::pow(2.0 * kPi / std::max(s.periods[0], s.periods[1]), 2);

  double rho = 0.0;
  for (int iter = 0; iter < 400; ++iter) {
    const Field bx = form.apply(sp, x);
    rho = dot(x, bx);

    Field res(N);
    for (long p = 0; p < N; ++p) res[p] = bx[p] - rho * form.w[p] * x[p];
    const double rn = std::sqrt(dot(res, res));
    if (rn <= 1e-9 * (std::abs(rho) + 1.0)) break;

    Field z = sp.band_limit(sp.solve_helmholtz(res, m2));
    for (long p = 0; p < N; ++p) z[p] /= scale;
    project(z);

    const Field bz = form.apply(sp, z);
    Eigen::Matrix2d A2, M2;
    A2 << dot(x, bx), dot(x, bz), dot(z, bx), dot(z, bz);
    M2 << m_dot(x, x), m_dot(x, z), m_dot(z, x), m_dot(z, z);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::Matrix2d> es(
        0.5 * (A2 + A2.transpose()), 0.5 * (M2 + M2.transpose()));
    const Eigen::Vector2d v = es.eigenvectors().col(0);

    Field xn(N);
    for (long p = 0; p < N; ++p) xn[p] = v(0) * x[p] + v(1) * z[p];
    project(xn);
    nrm = std::sqrt(m_dot(xn, xn));
    for (long p = 0; p < N; ++p) xn[p] /= nrm;
    x = std::move(xn);
  }
  return rho;
}

}  // namespace

double jacobi_min_eigenvalue(const AmbientMetric& g, const CMCSolution& leaf) {
  if (!leaf.converged) throw SolverError("leaf not converged");
  const Spectral& sp = leaf.u_perp.spectral();
  const JacobiForm form(g, leaf);
  if (sp.slice().n == 1) return dense_min_eigenvalue(sp, form);
  return iterative_min_eigenvalue(sp, form, leaf.r0);
}

FoliationReport build_foliation(const AmbientMetric& g,
                                std::shared_ptr<const Spectral> spectral,
                                double r_min, double r_max, int steps,
                                const SolveOptions& opt, SolveMethod method,
                                int threads) {
  if (steps < 2 || !(r_min < r_max))
    throw ConfigError(0, "foliation needs r_min < r_max and at least 2 steps");

  FoliationReport rep;
  rep.r_grid.resize(steps);
  rep.leaves.resize(steps);
  for (int i = 0; i < steps; ++i)
    rep.r_grid[i] = r_min + (r_max - r_min) * i / double(steps - 1);

  auto solve_one = [&](int i) {
    FoliationLeaf leaf;
    leaf.r = rep.r_grid[i];
    try {
      CMCSolution s = method == SolveMethod::picard
                          ? picard_solve(g, spectral, leaf.r, opt)
                          : newton_solve(g, spectral, leaf.r, opt);
      leaf.jacobi_min = jacobi_min_eigenvalue(g, s);
      leaf.solution = std::move(s);
    } catch (const std::exception& e) {
      leaf.error = e.what();
    }
    rep.leaves[i] = std::move(leaf);
  };

  const int workers = std::max(1, std::min(threads, steps));
  if (workers == 1) {
    for (int i = 0; i < steps; ++i) solve_one(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t)
      pool.emplace_back([&] {
        for (int i = next.fetch_add(1); i < steps; i = next.fetch_add(1))
          solve_one(i);
      });
    for (auto& th : pool) th.join();
  }

  for (const auto& leaf : rep.leaves)
    if (!leaf.solution) ++rep.failed;

  // d/dr (r + u) across adjacent leaves, centered inside, one-sided at the
  // ends; only the sign matters for the foliation property.
  const long total = spectral->slice().total();
  double mono = 1.0;
  bool have_pair = false;
  auto u_at = [&](int i) -> const Field* {
    return rep.leaves[i].solution ? &rep.leaves[i].solution->u_perp.values()
                                  : nullptr;
  };
  for (int i = 0; i < steps; ++i) {
    const int lo = i > 0 ? i - 1 : i;
    const int hi = i < steps - 1 ? i + 1 : i;
    if (lo == hi) continue;
    const Field* ul = u_at(lo);
    const Field* uh = u_at(hi);
    if (!ul || !uh) continue;
    const double dr = rep.r_grid[hi] - rep.r_grid[lo];
    for (long p = 0; p < total; ++p) {
      mono = std::min(mono, 1.0 + ((*uh)[p] - (*ul)[p]) / dr);
      have_pair = true;
    }
  }
  rep.monotonicity_min = have_pair || steps == 0 ? mono : 1.0;

  std::vector<double> rs_u, log_u, rs_d, log_d;
  for (int i = 0; i < steps; ++i) {
    if (!rep.leaves[i].solution) continue;
    const CMCSolution& s = *rep.leaves[i].solution;
    if (s.n2_u > 1e-14) {
      rs_u.push_back(rep.r_grid[i]);
      log_u.push_back(std::log(s.n2_u));
    }
    if (std::abs(s.delta) > 1e-14) {
      rs_d.push_back(rep.r_grid[i]);
      log_d.push_back(std::log(std::abs(s.delta)));
    }
  }
  rep.decay_fit_u = fit_line(rs_u, log_u);
  rep.decay_fit_delta = fit_line(rs_d, log_d);
  return rep;
}

double metric_distance_to_model(const AmbientMetric& g) {
  const SliceSpec& s = g.slice();
  const PerturbationField& h = g.perturbation();
  if (h.is_zero()) return 0.0;
  double best = 0.0;
  double x[2] = {0.0, 0.0};
  const int m = s.n + 1;
  for (int step = 0; step <= 32; ++step) {
    const double r = g.r_min() + (g.r_max() - g.r_min()) * step / 32.0;
    const double growth = std::exp(h.alpha() * r);
    for (int i0 = 0; i0 < s.grid[0]; ++i0) {
      x[0] = s.coord(0, i0);
      const int n1 = s.n == 2 ? s.grid[1] : 1;
      for (int i1 = 0; i1 < n1; ++i1) {
        if (s.n == 2) x[1] = s.coord(1, i1);
        for (int i = 0; i < m; ++i)
          for (int j = i; j < m; ++j)
            best = std::max(best, growth * std::abs(h.component(i, j, r, x)));
      }
    }
  }
  return best;
}

}  // namespace cusp
