#pragma once

#include "anyon/bethe.hpp"

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

namespace anyon {

using cplx = std::complex<double>;

/// Largest N accepted by the permutation-sum path (8! = 40320 terms).
inline constexpr int kMaxPermutationN = 8;

/// Ordering sector of a coordinate tuple: sorted_coords[i] = x[sorting_perm[i]].
struct SectorDecomposition {
  std::vector<int> sorting_perm;  // 0-based
  std::vector<double> sorted_coords;
};

/// Stable ascending sort; ties keep input order. Throws std::invalid_argument
/// for coordinates outside [0, L].
SectorDecomposition sort_to_sector(std::span<const double> x, double L);

/// Sign function with sign(0) = 0.
inline int step_sign(double u) { return (u > 0.0) - (u < 0.0); }

/// exp(-i kappa pi/2 * sum_{a<b} sign(x_a - x_b)).
cplx anyonic_phase(std::span<const double> x, double kappa);

/// Exchange angle theta for swapping positions i < j (0-based):
/// kappa*pi*[sum_{k=i+1..j} sign(x_i - x_k) - sum_{k=i+1..j-1} sign(x_j - x_k)].
double exchange_angle(std::span<const double> x, int i, int j, double kappa);

struct WavefnOptions {
  /// Mutation hook for the validation suite: flips the sign of the anyonic
  /// phase exponent. Never set in production runs.
  bool flip_phase_sign = false;
};

/// Exact ground-state wavefunction psi_A = phi_A * sum_P A_P exp(i sum_j k_{p_j} y_j)
/// on the sorted coordinates y. Immutable after construction.
///
/// The Bethe part is rescaled by a constant so that it equals 1 at the
/// equally spaced configuration y_j = (j - 1/2) L / N. This strips the
/// global phase, which makes the kappa = 0 wavefunction real and positive.
class WavefnEvaluator {
 public:
  explicit WavefnEvaluator(BetheState state, WavefnOptions options = {});

  cplx operator()(std::span<const double> x) const;

  /// Rescaled Bethe part at already-sorted coordinates (no anyonic phase).
  cplx bethe_part(std::span<const double> sorted) const;

  /// out[m] = exp(i k_m y), m = 0..N-1.
  void phase_column(double y, cplx* out) const;
  /// Rescaled Bethe part from precomputed phase columns of the sorted
  /// coordinates: cols[j] = phase_column(y_j). Same arithmetic as operator().
  cplx bethe_part_columns(const cplx* const* cols) const;
  /// Phase exponent flag actually applied (includes the mutation hook).
  double phase_kappa() const { return options_.flip_phase_sign ? -kappa() : kappa(); }

  const BetheState& state() const { return state_; }
  int particles() const { return state_.params.N; }
  double length() const { return state_.params.L; }
  double kappa() const { return state_.params.kappa; }
  bool hardcore() const { return state_.regime == CouplingRegime::kHardcore; }
  bool free() const { return state_.regime == CouplingRegime::kFree; }

  const std::vector<cplx>& amplitudes() const { return amplitudes_; }
  const std::vector<int>& permutation_signs() const { return signs_; }
  /// Permutation p occupies permutations()[p*N .. p*N+N).
  const std::vector<int>& permutations() const { return perms_; }

 private:
  cplx raw_bethe_part(std::span<const double> sorted) const;
  cplx raw_from_columns(const cplx* const* cols) const;

  BetheState state_;
  WavefnOptions options_;
  std::vector<int> perms_;
  std::vector<int> signs_;
  std::vector<cplx> amplitudes_;
  cplx scale_{1.0, 0.0};
};

inline cplx eval_psi(const WavefnEvaluator& ev, std::span<const double> x) { return ev(x); }

/// Hard-core anyons via the anyon-fermion mapping:
/// phi_A(x) * det[exp(i k_j y_l)] with k_j = 2 pi n_j / L on sorted y. Unscaled.
cplx eval_psi_hardcore(const ModelParams& params, std::span<const double> x);

class DegeneratePointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// |psi(x) - e^{-i theta} psi(x with x_i <-> x_j)| / |psi(x)|.
/// Throws DegeneratePointError when |psi(x)| < 1e-14.
double exchange_residual(const WavefnEvaluator& ev, std::span<const double> x, int i, int j);

}  // namespace anyon
