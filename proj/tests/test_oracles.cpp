#include "anyon/oracles.hpp"
#include "anyon/pipeline.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace anyon;
using std::numbers::pi;

TEST_CASE("two-body root") {
  CHECK(solve_n2(1e12, 1.0) == doctest::Approx(pi).epsilon(1e-10));
  CHECK(solve_n2(1e-9, 1.0) < 1e-4);
  const double k0 = solve_n2(1.0, 1.0);
  CHECK(k0 == doctest::Approx(0.96018887391478286).epsilon(1e-14));
  CHECK(std::abs(k0 - pi + 2 * std::atan(2 * k0)) < 1e-14);
  CHECK(solve_n2(kInfinity, 2.0) == doctest::Approx(pi / 2));
  CHECK_THROWS_AS(solve_n2(0.0, 1.0), std::invalid_argument);
  double prev = 0.0;
  for (double c : {0.01, 0.1, 1.0, 10.0, 100.0}) {
    const double k = solve_n2(c, 1.0);
    CHECK(k > prev);
    CHECK(k <= pi);
    prev = k;
  }
}

TEST_CASE("two-body oracle limits") {
  CHECK(entropy_n2(0.0, 0.0, 1.0, 4, 4).entropy < 1e-12);
  const auto fermi = entropy_n2(10.0, 1.0, 1.0, 4, 4);
  CHECK(fermi.entropy == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(fermi.occupations[0] == doctest::Approx(0.5).epsilon(1e-8));
  // hard-core bosons at N=2 are less than fully fragmented
  const auto hc = entropy_n2(kInfinity, 0.0, 1.0, 8, 4);
  CHECK(hc.entropy > 0.5);
  CHECK(hc.entropy < 1.0);
}

TEST_CASE("generic pipeline at N=2 reproduces the oracle") {
  GridSpec grid;
  for (double c : {0.1, 10.0}) {
    for (double kappa : {0.0, 0.5}) {
      const double ref = entropy_n2(c, kappa, 1.0, grid.outer_panels, grid.outer_order).entropy;
      RunOptions o;
      o.grid = grid;
      const double s = run_point({2, 1.0, c, kappa}, o).record.entropy;
      CAPTURE(c);
      CAPTURE(kappa);
      CHECK(std::abs(s - ref) < 1e-8);
    }
  }
}
