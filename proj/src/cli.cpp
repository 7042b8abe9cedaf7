#include "cusp/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "cusp/isoperimetric.hpp"
#include "cusp/validate.hpp"

namespace cusp::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

struct Context {
  RunConfig cfg;
  SliceSpec slice;
  std::shared_ptr<Spectral> spectral;
  std::unique_ptr<AmbientMetric> metric;
  std::filesystem::path out_dir;
  int threads = 1;
};

Context make_context(const RunConfig& cfg, const std::string& out_override,
                     int threads) {
  Context ctx;
  ctx.cfg = cfg;
  ctx.slice = SliceSpec(
      cfg.n, {cfg.periods[0], cfg.n == 2 ? cfg.periods[1] : cfg.periods[0]},
      {cfg.grid[0], cfg.n == 2 ? cfg.grid[1] : cfg.grid[0]});
  ctx.spectral = std::make_shared<Spectral>(ctx.slice);
  ctx.metric = std::make_unique<AmbientMetric>(
      ctx.slice, PerturbationField::make(cfg.family, ctx.slice, cfg.alpha, cfg.amplitude),
      cfg.r_min, cfg.r_max);
  ctx.out_dir = out_override.empty() ? cfg.directory : out_override;
  ctx.threads = threads;
  return ctx;
}

std::ofstream open_csv(const Context& ctx, const std::string& name) {
  std::filesystem::create_directories(ctx.out_dir);
  std::ofstream out(ctx.out_dir / name, std::ios::binary);
  if (!out) throw ConfigError(0, "cannot write " + (ctx.out_dir / name).string());
  char head[64];
  std::snprintf(head, sizeof(head), "%016llx",
                static_cast<unsigned long long>(config_hash(ctx.cfg)));
  out << "# cuspcmc " << kVersion << " config=" << head << "\n";
  return out;
}

SolveOptions solve_options(const RunConfig& cfg) {
  return SolveOptions{cfg.tol, cfg.max_iter, cfg.eta};
}

std::vector<SolveMethod> methods_of(const RunConfig& cfg) {
  if (cfg.method == "picard") return {SolveMethod::picard};
  if (cfg.method == "newton") return {SolveMethod::newton};
  return {SolveMethod::picard, SolveMethod::newton};
}

const char* method_name(SolveMethod m) {
  return m == SolveMethod::picard ? "picard" : "newton";
}

void write_leaf_row(std::ofstream& out, double r, const CMCSolution& s,
                    double jacobi_min) {
  out << g17(r) << ',' << g17(s.delta) << ',' << g17(s.n2_u) << ','
      << g17(s.residual_history.back()) << ',' << s.iterations << ','
      << g17(jacobi_min) << ',' << s.method << '\n';
}

int cmd_solve(const Context& ctx) {
  std::ofstream out = open_csv(ctx, "leaves.csv");
  out << "r,delta,n2_u,residual,iterations,jacobi_min,method\n";
  int failures = 0;
  for (SolveMethod m : methods_of(ctx.cfg)) {
    try {
      const CMCSolution s =
          m == SolveMethod::picard
              ? picard_solve(*ctx.metric, ctx.spectral, ctx.cfg.r0, solve_options(ctx.cfg))
              : newton_solve(*ctx.metric, ctx.spectral, ctx.cfg.r0, solve_options(ctx.cfg));
      write_leaf_row(out, ctx.cfg.r0, s, jacobi_min_eigenvalue(*ctx.metric, s));
    } catch (const SolverError& e) {
      ++failures;
      std::cerr << method_name(m) << " at r0 = " << g17(ctx.cfg.r0) << ": "
                << e.what() << "\n";
      for (size_t i = 0; i < e.residual_history().size(); ++i)
        std::cerr << "  iter " << i + 1 << " residual "
                  << g17(e.residual_history()[i]) << "\n";
    }
  }
  return failures ? 1 : 0;
}

int cmd_foliate(const Context& ctx) {
  std::ofstream leaves = open_csv(ctx, "leaves.csv");
  leaves << "r,delta,n2_u,residual,iterations,jacobi_min,method\n";
  std::ofstream summary = open_csv(ctx, "foliation_summary.csv");
  summary << "method,leaves,converged,monotonicity_min,jacobi_min,"
             "slope_u,slope_u_ci95,prefactor_u,slope_delta,slope_delta_ci95,"
             "prefactor_delta\n";

  int failures = 0;
  for (SolveMethod m : methods_of(ctx.cfg)) {
    const FoliationReport rep = build_foliation(
        *ctx.metric, ctx.spectral, ctx.cfg.foliation_r_min, ctx.cfg.foliation_r_max,
        ctx.cfg.foliation_steps, solve_options(ctx.cfg), m, ctx.threads);
    double min_jac = 1e300;
    for (const auto& leaf : rep.leaves) {
      if (leaf.solution) {
        write_leaf_row(leaves, leaf.r, *leaf.solution, leaf.jacobi_min);
        min_jac = std::min(min_jac, leaf.jacobi_min);
      } else {
        std::cerr << method_name(m) << " at r = " << g17(leaf.r) << ": "
                  << leaf.error << "\n";
        ++failures;
      }
    }
    const int converged = int(rep.leaves.size()) - rep.failed;
    summary << method_name(m) << ',' << rep.leaves.size() << ',' << converged
            << ',' << g17(rep.monotonicity_min) << ','
            << g17(converged ? min_jac : 0.0) << ',' << g17(rep.decay_fit_u.slope)
            << ',' << g17(rep.decay_fit_u.slope_ci95) << ','
            << g17(rep.decay_fit_u.valid ? std::exp(rep.decay_fit_u.intercept) : 0.0)
            << ',' << g17(rep.decay_fit_delta.slope) << ','
            << g17(rep.decay_fit_delta.slope_ci95) << ','
            << g17(rep.decay_fit_delta.valid
                       ? std::exp(rep.decay_fit_delta.intercept)
                       : 0.0)
            << '\n';
  }
  return failures ? 1 : 0;
}

int cmd_isoperimetric(const Context& ctx) {
  IsoperimetricOptions opt;
  opt.disk_center = ctx.cfg.disk_center;
  opt.solve = solve_options(ctx.cfg);
  const auto samples =
      compare_profiles(*ctx.metric, ctx.spectral, ctx.cfg.v_grid, opt);

  std::ofstream out = open_csv(ctx, "isoperimetric.csv");
  out << "v,slice_length,slice_H,leaf_length,leaf_H,disk_length,disk_H,winner\n";
  for (const auto& s : samples)
    out << g17(s.v) << ',' << g17(s.slice_region.length) << ','
        << g17(s.slice_region.H) << ',' << g17(s.cmc_leaf_region.length) << ','
        << g17(s.cmc_leaf_region.H) << ',' << g17(s.geodesic_disk.length) << ','
        << g17(s.geodesic_disk.H) << ',' << s.best << '\n';
  return 0;
}

int cmd_validate(const Context& ctx) {
  std::cout << "metric distance to the exact model: "
            << g17(metric_distance_to_model(*ctx.metric)) << "\n";
  const auto results = run_validation(ctx.cfg);
  int failed = 0;
  for (const auto& r : results) {
    const char* tag = r.skipped ? "SKIP" : (r.passed ? "PASS" : "FAIL");
    if (!r.skipped && !r.passed) ++failed;
    std::cout << "[" << tag << "] " << r.name;
    if (!r.detail.empty()) std::cout << " -- " << r.detail;
    std::cout << "\n";
  }
  std::cout << (failed ? "validation FAILED" : "validation passed") << " ("
            << results.size() << " checks)\n";
  return failed ? 1 : 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"CMC graph leaves, foliations and isoperimetric comparisons "
               "in exponentially pinched ends"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string config_path, out_override;
  int threads = 1;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "run configuration file")->required();
    sub->add_option("--out", out_override, "output directory (overrides config)");
    sub->add_option("--threads", threads, "parallel radius solves")
        ->check(CLI::PositiveNumber);
    return sub;
  };

  CLI::App* solve = add_common(app.add_subcommand("solve", "solve one leaf at r0"));
  CLI::App* foliate =
      add_common(app.add_subcommand("foliate", "solve a foliation over the radius grid"));
  CLI::App* validate =
      add_common(app.add_subcommand("validate", "run the invariant suite"));
  CLI::App* isoperimetric = add_common(
      app.add_subcommand("isoperimetric", "compare candidate regions per volume"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const RunConfig cfg = load_config(config_path);
    const Context ctx = make_context(cfg, out_override, threads);
    if (solve->parsed()) return cmd_solve(ctx);
    if (foliate->parsed()) return cmd_foliate(ctx);
    if (validate->parsed()) return cmd_validate(ctx);
    if (isoperimetric->parsed()) return cmd_isoperimetric(ctx);
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
}

}  // namespace cusp::cli
