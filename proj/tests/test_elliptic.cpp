#include <doctest.h>

#include "test_helpers.hpp"

using namespace cusp;
using namespace cusp::testing;

TEST_SUITE_BEGIN("elliptic");

TEST_CASE("project_meanzero") {
  Spectral sp(circle());
  SUBCASE("constant maps to zero") {
    Field f(sp.slice().total(), 5.0);
    CHECK(sp.sup_norm(sp.project_meanzero(f)) == doctest::Approx(0.0).epsilon(1e-14));
  }
  SUBCASE("mean-zero field unchanged, constants dropped") {
    const Field base = cos_axis0(sp.slice());
    Field shifted(base);
    for (double& v : shifted) v += 3.0;
    CHECK(sup_diff(sp.project_meanzero(shifted), base) < 1e-13);
    CHECK(sup_diff(sp.project_meanzero(base), base) < 1e-15);
  }
}

TEST_CASE("solve_poisson on analytic eigenmodes") {
  Spectral sp(circle());
  // circle of circumference 2 pi: lambda_1 = -1, lambda_2 = -4
  const Field f1 = cos_axis0(sp.slice(), 1.0, 1);
  Field expect1(f1);
  for (double& v : expect1) v = -v;
  CHECK(sup_diff(sp.solve_poisson(f1), expect1) < 1e-13);

  const Field f2 = cos_axis0(sp.slice(), 1.0, 2);
  Field expect2(f2);
  for (double& v : expect2) v = -v / 4.0;
  CHECK(sup_diff(sp.solve_poisson(f2), expect2) < 1e-13);

  const Field zero = zero_field(sp.slice());
  CHECK(sp.sup_norm(sp.solve_poisson(zero)) == 0.0);
}

TEST_CASE("solve_poisson rejects non-mean-zero input") {
  Spectral sp(circle());
  Field f(sp.slice().total(), 1.0);
  CHECK_THROWS_WITH_AS(sp.solve_poisson(f), "projection violated", GeometryError);
}

TEST_CASE("discrete bounded-inverse constant") {
  // attained at the lowest nonzero frequency: (1 + w + w^2) / w^2
  CHECK(Spectral(circle(64, 2.0 * kPi)).discrete_CL() == doctest::Approx(3.0));
  CHECK(Spectral(circle(64, kPi)).discrete_CL() == doctest::Approx(1.75));
  CHECK(Spectral(torus(16)).discrete_CL() == doctest::Approx(3.0));
  // rectangular torus: the slower axis dominates
  const double w = 2.0 * kPi / 8.0;
  CHECK(Spectral(torus(16, 2.0 * kPi, 8.0)).discrete_CL() ==
        doctest::Approx((1.0 + w + w * w) / (w * w)));
}

TEST_CASE("inverse identity and norm bound on random band-limited data") {
  std::mt19937_64 rng(2024);
  for (const SliceSpec& s : {circle(), torus(32)}) {
    Spectral sp(s);
    const double CL = sp.discrete_CL();
    for (int trial = 0; trial < 50; ++trial) {
      const Field f =
          sp.project_meanzero(random_band_limited(s, rng, s.grid[0] / 4));
      if (sp.sup_norm(f) < 1e-12) continue;
      const Field u = sp.solve_poisson(f);

      // solve then apply the Laplacian reproduces the projection
      CHECK(sup_diff(sp.laplacian(u), f) <= 1e-12 * std::max(1.0, sp.sup_norm(f)));
      // kernel component stays zero
      CHECK(std::abs(sp.mean(u)) <= 1e-13);
      // discrete bounded-inverse estimate
      CHECK(sp.n2_norm(u) <= CL * sp.sup_norm(f) * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("spectral derivatives match analytic frequencies") {
  Spectral sp(circle(64, 4.0));  // period 4: d/dx cos(2 pi x / 4) has w = pi/2
  const Field f = cos_axis0(sp.slice());
  const Field d1 = sp.deriv(f, 0);
  const Field d2 = sp.deriv2(f, 0, 0);
  const double w = 2.0 * kPi / 4.0;
  const Field expect_d1 = trig_field(sp.slice(), {{-w, 1.0, -0.5 * kPi, 0.0, 0.0}});
  CHECK(sup_diff(d1, expect_d1) < 1e-12);
  Field expect_d2(f);
  for (double& v : expect_d2) v *= -w * w;
  CHECK(sup_diff(d2, expect_d2) < 1e-12);
}

TEST_SUITE_END();
