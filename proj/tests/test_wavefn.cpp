#include "anyon/oracles.hpp"
#include "anyon/wavefn.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace anyon;
using std::numbers::pi;

namespace {

std::vector<double> random_tuple(std::mt19937_64& rng, int N, double L) {
  std::uniform_real_distribution<double> u(0.0, L);
  std::vector<double> x(N);
  for (auto& v : x) v = u(rng);
  return x;
}

WavefnEvaluator make(int N, double c, double kappa, WavefnOptions o = {}) {
  return WavefnEvaluator(solve_ground_state({N, 1.0, c, kappa}), o);
}

}  // namespace

TEST_CASE("sort_to_sector") {
  const std::vector<double> x{0.5, 0.1, 0.5, 0.3};
  const auto s = sort_to_sector(x, 1.0);
  CHECK(s.sorting_perm == std::vector<int>{1, 3, 0, 2});
  CHECK(s.sorted_coords == std::vector<double>{0.1, 0.3, 0.5, 0.5});
  const std::vector<double> bad{0.2, 1.2};
  CHECK_THROWS_AS(sort_to_sector(bad, 1.0), std::invalid_argument);
}

TEST_CASE("anyonic phase") {
  const std::vector<double> a{0.1, 0.2};
  CHECK(std::abs(anyonic_phase(a, 1.0) - cplx(0, 1)) < 1e-15);
  CHECK(std::abs(anyonic_phase(a, 0.0) - 1.0) < 1e-15);
  const std::vector<double> tie{0.3, 0.3};
  CHECK(std::abs(anyonic_phase(tie, 0.7) - 1.0) < 1e-15);
  const std::vector<double> three{0.9, 0.1, 0.5};  // signs +1, +1, -1
  CHECK(std::abs(anyonic_phase(three, 0.5) - std::exp(cplx(0, -pi / 4))) < 1e-15);
}

TEST_CASE("amplitude table") {
  const auto ev = make(4, 10.0, 0.5);
  CHECK(ev.amplitudes().size() == 24u);
  CHECK(ev.permutation_signs().size() == 24u);
  int sum = 0;
  for (int s : ev.permutation_signs()) sum += s;
  CHECK(sum == 0);
}

TEST_CASE("exchange symmetry") {
  std::mt19937_64 rng(7);
  for (double c : {1.0, 10.0, 100.0}) {
    for (double kappa : {0.0, 0.5, 0.75}) {
      const auto ev = make(4, c, kappa);
      double worst = 0.0;
      for (int t = 0; t < 50; ++t) {
        const auto x = random_tuple(rng, 4, 1.0);
        for (int i = 0; i < 4; ++i)
          for (int j = i + 1; j < 4; ++j) worst = std::max(worst, exchange_residual(ev, x, i, j));
      }
      CAPTURE(c);
      CAPTURE(kappa);
      CHECK(worst < 1e-10);
    }
  }
}

TEST_CASE("flipped phase breaks exchange symmetry") {
  WavefnOptions o;
  o.flip_phase_sign = true;
  const auto ev = make(4, 10.0, 0.5, o);
  std::mt19937_64 rng(3);
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) worst = std::max(worst, exchange_residual(ev, random_tuple(rng, 4, 1.0), 0, 1));
  CHECK(worst > 1e-2);
}

TEST_CASE("twisted boundary condition") {
  std::mt19937_64 rng(11);
  for (double kappa : {0.0, 0.3, 0.5, 0.8}) {
    for (double c : {1.0, 10.0, kInfinity}) {
      const auto ev = make(4, c, kappa);
      const cplx twist = std::exp(cplx(0, kappa * pi * 3));
      for (int t = 0; t < 20; ++t) {
        auto x = random_tuple(rng, 4, 1.0);
        x[0] = 0.0;
        const cplx a = ev(x);
        x[0] = 1.0;
        const cplx b = ev(x);
        CHECK(std::abs(a - twist * b) < 1e-10 * std::abs(a));
      }
    }
  }
}

TEST_CASE("bosonic wavefunction is real and positive") {
  std::mt19937_64 rng(5);
  for (double c : {0.5, 10.0, kInfinity}) {
    const auto ev = make(4, c, 0.0);
    for (int t = 0; t < 50; ++t) {
      const cplx v = ev(random_tuple(rng, 4, 1.0));
      CHECK(std::abs(v.imag()) < 1e-10 * std::abs(v));
      CHECK(v.real() >= 0.0);
    }
  }
}

TEST_CASE("|psi|^2 is permutation invariant") {
  std::mt19937_64 rng(13);
  const auto ev = make(4, 3.0, 0.6);
  for (int t = 0; t < 20; ++t) {
    auto x = random_tuple(rng, 4, 1.0);
    const double ref = std::norm(ev(x));
    std::sort(x.begin(), x.end());
    do {
      CHECK(std::norm(ev(x)) == doctest::Approx(ref).epsilon(1e-11));
    } while (std::next_permutation(x.begin(), x.end()));
  }
}

TEST_CASE("contact cusp: derivative jump equals 2 c' psi") {
  const double c = 10.0;
  const auto ev = make(4, c, 0.0);
  const double a = 0.37, h = 1e-5;
  auto f = [&](double x1, double x2) {
    const std::vector<double> x{x1, x2, 0.71, 0.05};
    return ev(x).real();
  };
  auto d1 = [](double f0, double f1, double f2, double step) {
    return (-3 * f0 + 4 * f1 - f2) / (2 * step);
  };
  const double f0 = f(a, a);
  // one-sided derivatives in the region x1 > x2 and x1 < x2
  const double dplus = d1(f0, f(a + h, a), f(a + 2 * h, a), h) + d1(f0, f(a, a - h), f(a, a - 2 * h), h);
  const double dminus = -d1(f0, f(a - h, a), f(a - 2 * h, a), h) - d1(f0, f(a, a + h), f(a, a + 2 * h), h);
  CHECK((dplus - dminus) / f0 == doctest::Approx(2 * c).epsilon(1e-5));
  // continuous across the contact
  CHECK(f(a + 1e-9, a) == doctest::Approx(f(a - 1e-9, a)).epsilon(1e-7));
}

TEST_CASE("determinant path is a constant multiple of the evaluator") {
  std::mt19937_64 rng(17);
  const ModelParams p{4, 1.0, kInfinity, 0.4};
  const auto ev = WavefnEvaluator(solve_ground_state(p));
  auto x0 = random_tuple(rng, 4, 1.0);
  const cplx ratio0 = ev(x0) / eval_psi_hardcore(p, x0);
  for (int t = 0; t < 30; ++t) {
    const auto x = random_tuple(rng, 4, 1.0);
    CHECK(std::abs(ev(x) / eval_psi_hardcore(p, x) / ratio0 - 1.0) < 1e-10);
  }
}

TEST_CASE("N=2 evaluator matches the closed-form relative wavefunction") {
  std::mt19937_64 rng(19);
  for (double c : {0.1, 1.0, 10.0}) {
    for (double kappa : {0.0, 0.25, 0.75}) {
      const auto ev = make(2, c, kappa);
      const double k0 = solve_n2(effective_coupling(c, kappa).value, 1.0);
      const std::vector<double> ref{0.2, 0.6};
      const cplx r0 = ev(ref) / psi_n2(k0, kappa, 1.0, ref[0], ref[1]);
      for (int t = 0; t < 20; ++t) {
        const auto x = random_tuple(rng, 2, 1.0);
        const cplx r = ev(x) / psi_n2(k0, kappa, 1.0, x[0], x[1]);
        CHECK(std::abs(r / r0 - 1.0) < 1e-10);
      }
    }
  }
}

TEST_CASE("free gas is constant") {
  const auto ev = make(4, 0.0, 0.0);
  const std::vector<double> x{0.1, 0.9, 0.4, 0.4};
  CHECK(std::abs(ev(x) - 1.0) < 1e-15);
}
