#pragma once

#include "anyon/pipeline.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace anyon {

struct CheckResult {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

/// value < threshold
CheckResult make_check(std::string name, double value, double threshold);

/// Generic pipeline at N = 2 against the independent two-body oracle, one
/// check per (c, kappa) point.
std::vector<CheckResult> check_oracle_equivalence(const std::vector<double>& couplings,
                                                  const std::vector<double>& kappas,
                                                  const GridSpec& grid, double tolerance = 1e-4);

/// max_t |det_t / r - sum_t| / max_t |sum_t|, r the least-squares factor
/// between the determinant path and the permutation sum at c' = cap.
CheckResult check_hardcore_crosspath(int N, double L, double kappa, int tuples, std::uint64_t seed,
                                     double cap = 1e6, double tolerance = 1e-4);

/// Max exchange residual over random tuples and random pairs i < j.
CheckResult check_exchange_symmetry(const ModelParams& params, int tuples, std::uint64_t seed,
                                    const WavefnOptions& wopt = {}, double tolerance = 1e-10);

/// Max |psi(0, X) - e^{i kappa pi (N-1)} psi(L, X)| / |psi(0, X)|.
CheckResult check_twisted_boundary(const ModelParams& params, int tuples, std::uint64_t seed,
                                   const WavefnOptions& wopt = {}, double tolerance = 1e-10);

/// Hermiticity against directly integrated lower-triangle entries, unit
/// trace, occupation sum and PSD margin of a finished run.
std::vector<CheckResult> check_rdm_invariants(const RunResult& run, const GridSpec& grid);

/// Quadrature entry against Monte Carlo, pass when within 3 standard errors.
CheckResult check_mc_entry(const ModelParams& params, double x, double xp, const InnerSpec& inner,
                           std::int64_t samples, std::uint64_t seed);

struct ValidationOptions {
  GridSpec grid;
  std::int64_t mc_samples = 200000;
  std::uint64_t seed = 20240611;
  bool mutate_phase = false;  // flips the anyonic phase sign to exercise the suite
};

std::vector<CheckResult> run_validation(const ValidationOptions& options);

void write_checks_csv(std::ostream& os, const std::vector<CheckResult>& checks);

}  // namespace anyon
