// Acceptance suite: one line per criterion, nonzero exit when any fail.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cusp/cli.hpp"
#include "cusp/isoperimetric.hpp"
#include "cusp/solver.hpp"

using namespace cusp;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::printf("[%s] %d %s -- %s\n", pass ? "PASS" : "FAIL", id, name.c_str(),
              detail.c_str());
  std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SliceSpec slice_of(int n) {
  return n == 1 ? SliceSpec(1, {2.0 * kPi, 2.0 * kPi}, {64, 64})
                : SliceSpec(2, {2.0 * kPi, 2.0 * kPi}, {64, 64});
}

Field random_trig(const SliceSpec& s, std::mt19937_64& rng, int max_freq,
                  double sup_target) {
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  std::uniform_int_distribution<int> freq(0, max_freq);
  Field f = zero_field(s);
  for (int t = 0; t < 3; ++t) {
    const int k0 = freq(rng), k1 = s.n == 2 ? freq(rng) : 0;
    const double a = amp(rng), p0 = amp(rng) * kPi, p1 = amp(rng) * kPi;
    for (int i0 = 0; i0 < s.grid[0]; ++i0) {
      const int n1 = s.n == 2 ? s.grid[1] : 1;
      for (int i1 = 0; i1 < n1; ++i1) {
        double v = a * std::cos(2.0 * kPi * k0 * s.coord(0, i0) / s.periods[0] + p0);
        if (s.n == 2)
          v *= std::cos(2.0 * kPi * k1 * s.coord(1, i1) / s.periods[1] + p1);
        f[s.index(i0, i1)] += v;
      }
    }
  }
  double sup = 0.0;
  for (double v : f) sup = std::max(sup, std::abs(v));
  if (sup > 0.0)
    for (double& v : f) v *= sup_target / sup;
  return f;
}

void criterion_1_slice_identity() {
  bool pass = true;
  std::ostringstream d;
  for (int n : {1, 2}) {
    const SliceSpec s = slice_of(n);
    auto sp = std::make_shared<Spectral>(s);
    const AmbientMetric g(s, PerturbationField::zero(s), 2.0, 8.0);
    double worst = 0.0, slowest = 0.0;
    for (double r : {2.0, 4.0, 6.0, 8.0}) {
      const auto t0 = std::chrono::steady_clock::now();
      const CurvatureReport rep = mean_curvature(g, r, GraphFunction::zero(sp));
      slowest = std::max(slowest, seconds_since(t0));
      for (double v : rep.H_field) worst = std::max(worst, std::abs(v + n));
    }
    pass = pass && worst <= 1e-10 && slowest < 1.0;
    d << "n=" << n << ": sup|H+n|=" << worst << " max_case_time=" << slowest
      << "s  ";
  }
  report(1, "slice identity", pass, d.str());
}

void criterion_2_oracle_equivalence() {
  std::mt19937_64 rng(42);
  double worst = 0.0;
  for (int n : {1, 2}) {
    const SliceSpec s = slice_of(n);
    auto sp = std::make_shared<Spectral>(s);
    const AmbientMetric g(s, PerturbationField::zero(s), 2.0, 8.0);
    std::uniform_real_distribution<double> rd(2.0, 4.0);
    for (int trial = 0; trial < 10; ++trial) {
      const double r0 = rd(rng);
      GraphFunction u(sp, random_trig(s, rng, 3, 1e-2));
      const Field full = mean_curvature(g, r0, u).H_field;
      const Field model = mean_curvature_model(r0, u);
      for (size_t p = 0; p < full.size(); ++p)
        worst = std::max(worst, std::abs(full[p] - model[p]));
    }
  }
  std::ostringstream d;
  d << "20 random graphs, sup difference " << worst;
  report(2, "oracle equivalence", worst <= 1e-9, d.str());
}

void criterion_3_taylor_structure() {
  bool pass = true;
  std::ostringstream d;
  double min_order = 1e300;
  for (int n : {1, 2}) {
    const SliceSpec s =
        n == 1 ? slice_of(1) : SliceSpec(2, {2.0 * kPi, 2.0 * kPi}, {32, 32});
    auto sp = std::make_shared<Spectral>(s);
    std::mt19937_64 rng(7 + n);
    GraphFunction u(sp, random_trig(s, rng, 2, 1.0));
    for (const char* fam : {"cos_x1", "cos_x1_minus_one", "mixed"}) {
      for (double alpha : {5.0, 6.0}) {
        const AmbientMetric g(s, PerturbationField::make(fam, s, alpha, 0.1), 2.0,
                              8.0);
        std::vector<double> lt, lr;
        for (double t : {1e-2, 1e-3, 1e-4}) {
          const double rem = taylor_residual(g, 3.0, u, t);
          lt.push_back(std::log(t));
          lr.push_back(std::log(rem));
        }
        min_order = std::min(min_order, fit_line(lt, lr).slope);
      }
    }
  }
  pass = min_order >= 2.7;
  d << "min fitted remainder order " << min_order;

  // model linearization
  {
    const SliceSpec s = slice_of(1);
    auto sp = std::make_shared<Spectral>(s);
    const AmbientMetric g(s, PerturbationField::zero(s), 2.0, 8.0);
    Field cosx(s.total());
    for (int i = 0; i < s.grid[0]; ++i) cosx[i] = std::cos(s.coord(0, i));
    GraphFunction u(sp, cosx);
    const Field lin = linearized_mc(g, 2.0, u);
    const Field lap = sp->laplacian(u.values());
    double rel = 0.0;
    const double sc = std::exp(4.0);
    for (size_t p = 0; p < lin.size(); ++p)
      rel = std::max(rel, std::abs(lin[p] + sc * lap[p]) / sc);
    pass = pass && rel <= 1e-6;
    d << ", linearization rel err " << rel;
  }
  report(3, "taylor structure", pass, d.str());
}

void criterion_4_bounded_inverse() {
  std::mt19937_64 rng(2025);
  double worst_inv = 0.0, worst_margin = 0.0;
  bool pass = true;
  for (int n : {1, 2}) {
    const SliceSpec s =
        n == 1 ? slice_of(1) : SliceSpec(2, {2.0 * kPi, 2.0 * kPi}, {32, 32});
    const Spectral sp(s);
    const double CL = sp.discrete_CL();
    for (int trial = 0; trial < 50; ++trial) {
      Field f =
          sp.project_meanzero(random_trig(s, rng, std::min(s.grid[0] / 4, 6), 1.0));
      const double supf = sp.sup_norm(f);
      if (supf < 1e-12) continue;
      const Field u = sp.solve_poisson(f);
      const Field back = sp.laplacian(u);
      for (size_t p = 0; p < f.size(); ++p)
        worst_inv = std::max(worst_inv, std::abs(back[p] - f[p]) / supf);
      const double ratio = sp.n2_norm(u) / supf;
      worst_margin = std::max(worst_margin, ratio / CL);
      pass = pass && ratio <= CL;
    }
  }
  pass = pass && worst_inv <= 1e-12;
  std::ostringstream d;
  d << "100 fields: inverse rel err " << worst_inv << ", worst n2/(CL sup) "
    << worst_margin;
  report(4, "bounded-inverse proxy", pass, d.str());
}

void criterion_5_decay_rates() {
  const auto t0 = std::chrono::steady_clock::now();
  const SliceSpec s = slice_of(1);
  auto sp = std::make_shared<Spectral>(s);
  bool pass = true;
  std::ostringstream d;
  const SolveOptions opt{1e-10, 200, 0.1};
  struct Window {
    double alpha, u_center, u_width, d_center, d_width;
  };
  for (const Window w : {Window{5.0, -3.0, 0.3, -1.0, 0.3},
                         Window{6.0, -4.0, 0.4, -2.0, 0.3}}) {
    const AmbientMetric g(
        s, PerturbationField::make("cos_x1_minus_one", s, w.alpha, 0.1), 2.0, 8.0);
    const FoliationReport rep =
        build_foliation(g, sp, 3.0, 7.0, 9, opt, SolveMethod::picard, 2);
    const bool ok_u = rep.decay_fit_u.valid &&
                      std::abs(rep.decay_fit_u.slope - w.u_center) <= w.u_width;
    const bool ok_d = rep.decay_fit_delta.valid &&
                      std::abs(rep.decay_fit_delta.slope - w.d_center) <= w.d_width;
    pass = pass && rep.all_converged() && ok_u && ok_d;
    d << "alpha=" << w.alpha << ": slope_u=" << rep.decay_fit_u.slope << " (want "
      << w.u_center << "+-" << w.u_width
      << "), slope_delta=" << rep.decay_fit_delta.slope << " (want " << w.d_center
      << "+-" << w.d_width << ")  ";
  }
  const double elapsed = seconds_since(t0);
  pass = pass && elapsed < 60.0;
  d << "time " << elapsed << "s";
  report(5, "decay rates at desk scale", pass, d.str());
}

void criterion_6_cross_method() {
  const SliceSpec s = slice_of(1);
  auto sp = std::make_shared<Spectral>(s);
  const SolveOptions opt{1e-10, 200, 0.1};
  double worst_u = 0.0, worst_d = 0.0;
  int cases = 0;
  for (const char* fam : {"cos_x1", "cos_x1_minus_one", "mixed"}) {
    for (double alpha : {5.0, 6.0}) {
      const AmbientMetric g(s, PerturbationField::make(fam, s, alpha, 0.1), 2.0, 8.0);
      for (double r0 : {3.0, 5.0, 7.0}) {
        const CMCSolution a = picard_solve(g, sp, r0, opt);
        const CMCSolution b = newton_solve(g, sp, r0, opt);
        ++cases;
        for (size_t p = 0; p < a.u_perp.values().size(); ++p)
          worst_u = std::max(
              worst_u, std::abs(a.u_perp.values()[p] - b.u_perp.values()[p]));
        worst_d = std::max(worst_d, std::abs(a.delta - b.delta));
      }
    }
  }
  std::ostringstream d;
  d << cases << " cases: sup|u_P-u_N|=" << worst_u << ", |d_P-d_N|=" << worst_d;
  report(6, "cross-method agreement", worst_u <= 1e-8 && worst_d <= 1e-8, d.str());
}

void criterion_7_foliation() {
  bool pass = true;
  std::ostringstream d;
  const SolveOptions opt{1e-10, 200, 0.1};

  // catalogue foliations: monotone and strongly stable
  {
    const SliceSpec s = slice_of(1);
    auto sp = std::make_shared<Spectral>(s);
    for (double alpha : {5.0, 6.0}) {
      const AmbientMetric g(
          s, PerturbationField::make("cos_x1_minus_one", s, alpha, 0.1), 2.0, 8.0);
      const FoliationReport rep =
          build_foliation(g, sp, 3.0, 7.0, 9, opt, SolveMethod::picard, 2);
      double min_jac = 1e300;
      for (const auto& leaf : rep.leaves)
        min_jac = std::min(min_jac, leaf.jacobi_min);
      pass = pass && rep.all_converged() && rep.monotonicity_min > 0.0 &&
             min_jac > 0.0;
      d << "alpha=" << alpha << ": mono=" << rep.monotonicity_min
        << " min_jacobi=" << min_jac << "  ";
    }
  }

  // exact-model stability spectrum against the analytic torus values
  {
    const SliceSpec s1 = slice_of(1);
    auto sp1 = std::make_shared<Spectral>(s1);
    const AmbientMetric g1(s1, PerturbationField::zero(s1), 2.0, 8.0);
    const CMCSolution leaf1 = picard_solve(g1, sp1, 4.0, opt);
    const double lam1 = jacobi_min_eigenvalue(g1, leaf1);
    const double rel1 = std::abs(lam1 - std::exp(8.0)) / std::exp(8.0);

    const SliceSpec s2(2, {2.0 * kPi, 4.0 * kPi}, {32, 32});
    auto sp2 = std::make_shared<Spectral>(s2);
    const AmbientMetric g2(s2, PerturbationField::zero(s2), 2.0, 8.0);
    const CMCSolution leaf2 = picard_solve(g2, sp2, 4.0, opt);
    const double lam2 = jacobi_min_eigenvalue(g2, leaf2);
    const double expect2 = std::exp(8.0) * 0.25;  // slowest harmonic, period 4 pi
    const double rel2 = std::abs(lam2 - expect2) / expect2;

    pass = pass && rel1 <= 0.01 && rel2 <= 0.01;
    d << "model spectrum rel err n=1: " << rel1 << ", n=2: " << rel2;
  }
  report(7, "foliation monotone and strongly stable", pass, d.str());
}

void criterion_8_isoperimetric() {
  const SliceSpec s = slice_of(1);
  auto sp = std::make_shared<Spectral>(s);
  const AmbientMetric g(s, PerturbationField::zero(s), 2.0, 8.0);
  const std::vector<double> vs{0.01, 0.05, 0.1, 0.3, 0.5};
  const auto samples = compare_profiles(g, sp, vs, {});
  bool pass = samples.size() == vs.size();
  double worst_slice = 0.0, worst_disk = 0.0;
  for (size_t i = 0; i < samples.size() && pass; ++i) {
    const auto& smp = samples[i];
    worst_slice = std::max(worst_slice, std::abs(smp.slice_region.length - vs[i]));
    worst_disk = std::max(worst_disk,
                          std::abs(smp.geodesic_disk.length -
                                   std::sqrt(vs[i] * vs[i] + 4.0 * kPi * vs[i])));
    const double hw = smp.slice_region.H;
    pass = pass && smp.best == "slice_region" &&
           smp.slice_region.length < smp.geodesic_disk.length &&
           std::abs(hw) <= 1.0 + 1e-6;
  }
  pass = pass && worst_slice <= 1e-12 && worst_disk <= 1e-6;
  std::ostringstream d;
  d << "slice |A-v| " << worst_slice << ", disk oracle err " << worst_disk
    << ", slice wins all volumes";
  report(8, "small-volume candidate comparison", pass, d.str());
}

void criterion_9_determinism() {
  const fs::path dir = fs::temp_directory_path() / "cuspcmc_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path cfg_path = dir / "run.ini";
  std::ofstream(cfg_path) << "[slice]\n"
                             "n = 1\n"
                             "periods = 6.283185307179586\n"
                             "grid = 64\n"
                             "[perturbation]\n"
                             "family = cos_x1_minus_one\n"
                             "alpha = 5\n"
                             "amplitude = 0.1\n"
                             "[study]\n"
                             "foliation_r_min = 3\n"
                             "foliation_r_max = 7\n"
                             "foliation_steps = 9\n";
  auto run_once = [&](const std::string& out) {
    const std::string cfgs = cfg_path.string();
    const std::string outs = (dir / out).string();
    const char* argv[] = {"cuspcmc", "foliate",    "--config",  cfgs.c_str(),
                          "--out",   outs.c_str(), "--threads", "3"};
    return cli::run(8, argv);
  };
  auto slurp = [&](const std::string& out, const char* name) {
    std::ifstream in(dir / out / name, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const int rc1 = run_once("a"), rc2 = run_once("b");
  const bool same_leaves = slurp("a", "leaves.csv") == slurp("b", "leaves.csv");
  const bool same_summary =
      slurp("a", "foliation_summary.csv") == slurp("b", "foliation_summary.csv");
  const bool nonempty = !slurp("a", "leaves.csv").empty();
  std::ostringstream d;
  d << "exit codes " << rc1 << "/" << rc2
    << ", identical bytes: leaves=" << same_leaves << " summary=" << same_summary;
  report(9, "foliate is byte-deterministic",
         rc1 == 0 && rc2 == 0 && nonempty && same_leaves && same_summary, d.str());
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  criterion_1_slice_identity();
  criterion_2_oracle_equivalence();
  criterion_3_taylor_structure();
  criterion_4_bounded_inverse();
  criterion_5_decay_rates();
  criterion_6_cross_method();
  criterion_7_foliation();
  criterion_8_isoperimetric();
  criterion_9_determinism();
  std::printf("%d/9 criteria passed in %.1fs\n", 9 - failures, seconds_since(t0));
  return failures == 0 ? 0 : 1;
}
