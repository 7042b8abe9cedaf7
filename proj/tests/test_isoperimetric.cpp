#include <doctest.h>

#include "test_helpers.hpp"

#include "cusp/isoperimetric.hpp"

using namespace cusp;
using namespace cusp::testing;

TEST_SUITE_BEGIN("isoperimetric");

TEST_CASE("slice region closed forms") {
  SUBCASE("boundary length equals the enclosed volume") {
    for (double v : {0.1, 2.0 * kPi * std::exp(-3.0), 1.0}) {
      const CandidateProfile p = slice_region_profile(v);
      CHECK(p.length == doctest::Approx(v).epsilon(1e-12));
      CHECK(p.H == -1.0);
    }
  }
  SUBCASE("the region radius leaves the end as v fills it") {
    const CandidateProfile p = slice_region_profile(2.0 * kPi * 0.999999);
    CHECK(p.parameter == doctest::Approx(0.0).epsilon(1e-5));
  }
  SUBCASE("volumes outside the end are rejected") {
    CHECK_THROWS_AS(slice_region_profile(0.0), GeometryError);
    CHECK_THROWS_AS(slice_region_profile(7.0), GeometryError);
  }
}

TEST_CASE("geodesic disk closed forms") {
  SUBCASE("length formula") {
    const CandidateProfile p = geodesic_disk_profile(0.1, 1.0);
    CHECK(p.length == doctest::Approx(std::sqrt(0.01 + 0.4 * kPi)).epsilon(1e-12));
    const CandidateProfile q = geodesic_disk_profile(0.5, 1.0);
    CHECK(q.length == doctest::Approx(std::sqrt(0.25 + 2.0 * kPi)).epsilon(1e-12));
  }
  SUBCASE("euclidean limit of small disks") {
    const double v = 1e-8;
    const CandidateProfile p = geodesic_disk_profile(v, 1.0);
    CHECK(p.length / std::sqrt(4.0 * kPi * v) == doctest::Approx(1.0).epsilon(1e-4));
  }
  SUBCASE("curvature of the circle of radius rho") {
    const double v = 0.3;
    const double rho = std::acosh(1.0 + v / (2.0 * kPi));
    const CandidateProfile p = geodesic_disk_profile(v, 1.0);
    CHECK(p.H == doctest::Approx(-std::cosh(rho) / std::sinh(rho)).epsilon(1e-12));
  }
  SUBCASE("deep centers cannot hold the disk") {
    CHECK_THROWS_WITH_AS(geodesic_disk_profile(0.1, 4.0),
                         "competitor not embeddable", GeometryError);
  }
}

TEST_CASE("exact model comparison: the slice family wins") {
  const SliceSpec s = circle();
  auto sp = std::make_shared<Spectral>(s);
  const AmbientMetric g = model_metric(s);
  const std::vector<double> vs{0.01, 0.05, 0.1, 0.3, 0.5};
  const auto samples = compare_profiles(g, sp, vs, {});
  REQUIRE(samples.size() == vs.size());
  for (size_t i = 0; i < vs.size(); ++i) {
    const auto& smp = samples[i];
    CHECK(smp.best == "slice_region");
    CHECK(smp.slice_region.length == doctest::Approx(vs[i]).epsilon(1e-12));
    // strict inequality against the disk
    CHECK(smp.slice_region.length < smp.geodesic_disk.length);
    CHECK(smp.geodesic_disk.length ==
          doctest::Approx(std::sqrt(vs[i] * vs[i] + 4.0 * kPi * vs[i]))
              .epsilon(1e-10));
    // leaf and slice coincide up to the quadrature tail
    CHECK(std::abs(smp.cmc_leaf_region.length - smp.slice_region.length) <= 1e-7);
    // winner curvature bound
    CHECK(std::abs(smp.slice_region.H) <= 1.0 + 1e-6);
    CHECK(smp.slice_region.H >= -1.0 - 1e-6);
  }
}

TEST_CASE("perturbed comparison: the leaf family wins and obeys the H bound") {
  const SliceSpec s = circle();
  auto sp = std::make_shared<Spectral>(s);
  const AmbientMetric g = catalogue_metric(s, "cos_x1_minus_one", 5.0, 0.01);
  const auto samples = compare_profiles(g, sp, {0.01, 0.1, 0.3}, {});
  for (const auto& smp : samples) {
    CHECK(smp.best == "cmc_leaf_region");
    CHECK(std::abs(smp.cmc_leaf_region.H) <= 1.0 + 1e-6);
    CHECK(smp.cmc_leaf_region.H >= -1.0 - 1e-6);
    CHECK(smp.cmc_leaf_region.length < smp.geodesic_disk.length);
  }
}

TEST_CASE("volume parameterization is root-solved to tolerance") {
  const SliceSpec s = circle();
  auto sp = std::make_shared<Spectral>(s);
  const AmbientMetric g = catalogue_metric(s, "cos_x1_minus_one", 5.0, 0.01);
  IsoperimetricOptions opt;
  const auto samples = compare_profiles(g, sp, {0.1}, opt);
  const double rv = samples[0].cmc_leaf_region.parameter;

  // recompute the enclosed volume behind the solved leaf independently
  // (Simpson with a step well below the production quadrature's)
  const CMCSolution leaf = newton_solve(g, sp, rv, opt.solve);
  double volume = 0.0;
  const double dtheta = s.spacing(0);
  for (int i = 0; i < s.grid[0]; ++i) {
    double x[1] = {s.coord(0, i)};
    const double a = rv + leaf.u_perp.values()[i];
    const int m = 2700;  // even
    const double h = (opt.r_truncate - a) / m;
    double acc = 0.0;
    for (int k = 0; k <= m; ++k) {
      const double r = a + k * h;
      const double w = std::sqrt(g.metric_at(r, x).det());
      acc += (k == 0 || k == m) ? w : (k % 2 ? 4.0 * w : 2.0 * w);
    }
    volume += acc * h / 3.0 * dtheta;
  }
  CHECK(volume == doctest::Approx(0.1).epsilon(1e-7));
}

TEST_CASE("n = 2 comparisons are out of range") {
  const SliceSpec s = torus(16);
  auto sp = std::make_shared<Spectral>(s);
  const AmbientMetric g = model_metric(s);
  CHECK_THROWS_AS(compare_profiles(g, sp, {0.1}, {}), ConfigError);
}

TEST_SUITE_END();
