#include "anyon/oracles.hpp"
#include "anyon/rdm.hpp"

#include <doctest.h>
#include <omp.h>

#include <cmath>
#include <numbers>
#include <sstream>

using namespace anyon;
using std::numbers::pi;

namespace {

WavefnEvaluator make(int N, double c, double kappa, double cap = kInfinity) {
  SolverOptions so;
  so.c_eff_cap = cap;
  return WavefnEvaluator(solve_ground_state({N, 1.0, c, kappa}, so));
}

const InnerSpec kSmallInner{InnerScheme::kSector, 1, 6};

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("free gas: rho = 1/L") {
  const auto rdm = build_rdm(make(4, 0.0, 0.0), build_grid(2, 4, 1.0), kSmallInner);
  CHECK(max_abs(rdm.values.array() - cplx(1.0)) < 1e-12);
  CHECK(rdm.weighted_trace() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("Fermi point reproduces the free-fermion kernel") {
  const auto rdm = build_rdm(make(4, 10.0, 1.0), build_grid(4, 4, 1.0), InnerSpec{});
  const double k[] = {3 * pi, pi, -pi, -3 * pi};
  double worst = 0.0;
  for (std::size_t i = 0; i < rdm.size(); ++i) {
    for (std::size_t j = 0; j < rdm.size(); ++j) {
      cplx ref = 0.0;
      for (double kj : k) ref += std::exp(cplx(0, kj * (rdm.grid.nodes[i] - rdm.grid.nodes[j])));
      ref /= 4.0;
      worst = std::max(worst, std::abs(rdm.values(i, j) - ref));
    }
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("Hermitian, unit trace; real symmetric for bosons") {
  const auto grid = build_grid(2, 4, 1.0);
  for (double kappa : {0.0, 0.5}) {
    const auto rdm = build_rdm(make(4, 3.0, kappa), grid, kSmallInner);
    CHECK(max_abs(rdm.values - rdm.values.adjoint()) < 1e-14);
    CHECK(rdm.weighted_trace() == doctest::Approx(1.0).epsilon(1e-12));
    if (kappa == 0.0) CHECK(rdm.values.imag().cwiseAbs().maxCoeff() < 1e-10);
    else CHECK(rdm.values.imag().cwiseAbs().maxCoeff() > 1e-3);
  }
}

TEST_CASE("direct lower-triangle entries agree with the Hermitian fill") {
  const auto ev = make(4, 10.0, 0.5);
  const auto rdm = build_rdm(ev, build_grid(2, 4, 1.0), kSmallInner);
  const double x = rdm.grid.nodes[6], xp = rdm.grid.nodes[1];
  const cplx direct = rdm_entry_raw(ev, x, xp, kSmallInner) / rdm.trace_raw;
  CHECK(std::abs(direct - rdm.values(6, 1)) < 1e-12);
}

TEST_CASE("particle slot: bosons fully, anyons on the diagonal") {
  for (double kappa : {0.0, 0.5}) {
    const auto ev = make(3, 5.0, kappa);
    for (auto [x, xp] : {std::pair{0.2, 0.7}, std::pair{0.9, 0.15}, std::pair{0.4, 0.4}}) {
      const cplx a = rdm_entry_raw(ev, x, xp, InnerSpec{});
      for (int slot = 1; slot < 3; ++slot) {
        const cplx b = rdm_entry_raw(ev, x, xp, InnerSpec{}, slot);
        CAPTURE(kappa);
        CAPTURE(slot);
        if (kappa == 0.0 || x == xp) CHECK(std::abs(b - a) < 1e-10 * std::abs(a));
        else CHECK(std::abs(b - a) > 1e-3 * std::abs(a));
      }
    }
  }
}

TEST_CASE("OpenMP kernel is bit-identical to the serial reference") {
  const auto ev = make(4, 1.0, 0.3);
  const auto grid = build_grid(3, 3, 1.0);
  const auto serial = build_rdm_serial(ev, grid, kSmallInner);
  for (int threads : {1, 2, 4}) {
    omp_set_num_threads(threads);
    const auto par = build_rdm(ev, grid, kSmallInner);
    CHECK((par.values.array() == serial.values.array()).all());
    CHECK(par.trace_raw == serial.trace_raw);
  }
}

TEST_CASE("sector and tensor inner schemes agree") {
  const auto ev = make(3, 2.0, 0.4);
  const cplx sector = rdm_entry_raw(ev, 0.3, 0.8, InnerSpec{InnerScheme::kSector, 2, 10});
  const cplx tensor = rdm_entry_raw(ev, 0.3, 0.8, InnerSpec{InnerScheme::kTensor, 8, 8});
  CHECK(std::abs(sector - tensor) < 1e-4 * std::abs(sector));
}

TEST_CASE("inner quadrature converges") {
  const auto ev = make(4, 10.0, 0.5);
  const cplx a = rdm_entry_raw(ev, 0.25, 0.6, InnerSpec{InnerScheme::kSector, 2, 8});
  const cplx b = rdm_entry_raw(ev, 0.25, 0.6, InnerSpec{InnerScheme::kSector, 2, 16});
  CHECK(std::abs(a - b) < 1e-8 * std::abs(b));
}

TEST_CASE("Monte Carlo agrees with quadrature and is deterministic") {
  const auto ev = make(4, 1.0, 0.25);
  const cplx q = rdm_entry_raw(ev, 0.2, 0.45, InnerSpec{});
  const auto mc = mc_rdm_entry(ev, 0.2, 0.45, 200000, 42);
  CHECK(std::abs(mc.estimate - q) < 4 * mc.std_error);
  const auto again = mc_rdm_entry(ev, 0.2, 0.45, 200000, 42);
  CHECK(again.estimate == mc.estimate);
  CHECK(again.std_error == mc.std_error);
  CHECK_THROWS_AS(mc_rdm_entry(ev, 0.2, 0.45, 10, 42), std::invalid_argument);
}

TEST_CASE("N=2 entries match the Gauss-Kronrod oracle") {
  for (double kappa : {0.0, 0.5}) {
    const auto oracle = rdm_n2(10.0, kappa, 1.0, 2, 4);
    const auto rdm = build_rdm(make(2, 10.0, kappa), oracle.grid, InnerSpec{});
    CHECK(max_abs(rdm.values - oracle.values) < 1e-10);
  }
}

TEST_CASE("hard-core path matches a large finite coupling") {
  const auto grid = build_grid(2, 3, 1.0);
  const auto hc = build_rdm(make(3, kInfinity, 0.5), grid, kSmallInner);
  const auto big = build_rdm(make(3, kInfinity, 0.5, 1e6), grid, kSmallInner);
  CHECK(max_abs(hc.values - big.values) < 1e-4);
}

TEST_CASE("text dump round trip") {
  const auto rdm = build_rdm(make(3, 4.0, 0.5), build_grid(1, 3, 1.0), kSmallInner);
  std::stringstream ss;
  write_rdm_text(ss, rdm);
  const auto back = read_rdm_text(ss);
  CHECK(back.params.N == 3);
  CHECK(back.params.kappa == 0.5);
  CHECK(back.grid.nodes == rdm.grid.nodes);
  CHECK(back.grid.weights == rdm.grid.weights);
  CHECK((back.values.array() == rdm.values.array()).all());

  const auto hc = build_rdm(make(2, kInfinity, 0.0), build_grid(1, 2, 1.0), kSmallInner);
  std::stringstream s2;
  write_rdm_text(s2, hc);
  CHECK(std::isinf(read_rdm_text(s2).params.c));
}
