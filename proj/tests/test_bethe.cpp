#include "anyon/bethe.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

using namespace anyon;
using std::numbers::pi;

TEST_CASE("ground-state quantum numbers") {
  CHECK(ground_state_quantum_numbers(4) == std::vector<double>{1.5, 0.5, -0.5, -1.5});
  CHECK(ground_state_quantum_numbers(3) == std::vector<double>{1.0, 0.0, -1.0});
  CHECK_THROWS_AS(ground_state_quantum_numbers(1), std::invalid_argument);
}

TEST_CASE("effective coupling") {
  CHECK(effective_coupling(10.0, 0.5).value == doctest::Approx(14.142135623730950).epsilon(1e-15));
  CHECK(effective_coupling(3.0, 0.0).value == 3.0);
  CHECK(std::isinf(effective_coupling(1.0, 1.0).value));
  CHECK(std::isinf(effective_coupling(kInfinity, 0.3).value));
  const auto z = effective_coupling(0.0, 1.0);
  CHECK(z.value == 0.0);
  CHECK(z.degenerate);
  CHECK(effective_coupling(0.0, 1.0).regime() == CouplingRegime::kFree);
  CHECK_THROWS_AS(effective_coupling(-1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(effective_coupling(1.0, 1.5), std::invalid_argument);
}

TEST_CASE("residuals at k = 0 are -2 pi n_j") {
  ModelParams p{4, 1.0, 10.0, 0.0};
  const auto r = bethe_residuals({0, 0, 0, 0}, 10.0, p);
  const auto n = ground_state_quantum_numbers(4);
  for (int j = 0; j < 4; ++j) CHECK(r[j] == doctest::Approx(-2 * pi * n[j]));
}

TEST_CASE("two-body solution matches the scalar equation") {
  const auto s = solve_ground_state({2, 1.0, 1.0, 0.0});
  CHECK(s.quasi_momenta[0] == doctest::Approx(0.96018887391478286).epsilon(1e-13));
  CHECK(s.quasi_momenta[1] == doctest::Approx(-0.96018887391478286).epsilon(1e-13));
  CHECK(s.residual_norm < 1e-12);
}

TEST_CASE("N=4, c=10 regression fixture") {
  const auto s = solve_ground_state({4, 1.0, 10.0, 0.0});
  const double k[] = {5.6970271444016466, 1.8647142012759198, -1.8647142012759198,
                      -5.6970271444016466};
  for (int j = 0; j < 4; ++j) CHECK(s.quasi_momenta[j] == doctest::Approx(k[j]).epsilon(1e-12));
  CHECK(s.energy == doctest::Approx(71.866554672978542).epsilon(1e-12));
  CHECK(std::abs(s.total_momentum) < 1e-12);
  CHECK(s.residual_norm < 1e-12);
  // the ground-state energy lies below the hard-core (free-fermion) value
  CHECK(s.energy < 20 * pi * pi);
}

TEST_CASE("limits") {
  const auto free = solve_ground_state({4, 1.0, 0.0, 0.3});
  for (double k : free.quasi_momenta) CHECK(k == 0.0);

  const auto hc = solve_ground_state(ModelParams{4, 1.0, kInfinity, 0.0});
  const double exact[] = {3 * pi, pi, -pi, -3 * pi};
  for (int j = 0; j < 4; ++j) CHECK(hc.quasi_momenta[j] == doctest::Approx(exact[j]));
  CHECK(hc.regime == CouplingRegime::kHardcore);

  SolverOptions cap;
  cap.c_eff_cap = 1e6;
  const auto big = solve_ground_state(ModelParams{4, 1.0, kInfinity, 0.0}, cap);
  CHECK(big.regime == CouplingRegime::kFinite);
  for (int j = 0; j < 4; ++j) CHECK(std::abs(big.quasi_momenta[j] - exact[j]) < 1e-4);
}

TEST_CASE("solver invariants over a parameter grid") {
  for (double c : {0.01, 0.1, 1.0, 10.0, 100.0, 1e4}) {
    for (double kappa : {0.0, 0.3, 0.7, 0.95}) {
      for (int N : {2, 3, 4, 6}) {
        const auto s = solve_ground_state({N, 1.0, c, kappa});
        CAPTURE(c);
        CAPTURE(kappa);
        CAPTURE(N);
        CHECK(s.residual_norm < 1e-12);
        CHECK(std::abs(s.total_momentum) < 1e-10);
        for (int j = 1; j < N; ++j) CHECK(s.quasi_momenta[j] < s.quasi_momenta[j - 1]);
        for (int j = 0; j < N; ++j)
          CHECK(s.quasi_momenta[j] == doctest::Approx(-s.quasi_momenta[N - 1 - j]).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("|k_j| is non-decreasing in c") {
  for (double kappa : {0.0, 0.5}) {
    std::vector<double> prev(4, 0.0);
    for (double c : {0.0, 0.1, 0.5, 1.0, 3.0, 10.0, 30.0, 100.0, 1e3, kInfinity}) {
      const auto s = solve_ground_state({4, 1.0, c, kappa});
      for (int j = 0; j < 4; ++j) CHECK(std::abs(s.quasi_momenta[j]) >= prev[j] - 1e-13);
      for (int j = 0; j < 4; ++j) prev[j] = std::abs(s.quasi_momenta[j]);
    }
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(solve_ground_state({0, 1.0, 1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(solve_ground_state({4, -1.0, 1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(solve_ground_state({4, 1.0, std::nan(""), 0.0}), std::invalid_argument);
}
