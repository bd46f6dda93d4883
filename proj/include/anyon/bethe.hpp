#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace anyon {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Physical specification of one run in natural units (hbar = 2m = 1).
/// c = +inf denotes the hard-core regime.
struct ModelParams {
  int N = 4;
  double L = 1.0;
  double c = 1.0;
  double kappa = 0.0;

  bool hardcore() const { return c == kInfinity; }
  /// Throws std::invalid_argument when any field is out of range.
  void validate() const;
};

enum class CouplingRegime { kFree, kFinite, kHardcore };

struct EffectiveCoupling {
  double value = 0.0;       // +inf in the hard-core regime
  bool degenerate = false;  // c = 0 at kappa = 1
  CouplingRegime regime() const {
    if (value == kInfinity) return CouplingRegime::kHardcore;
    return value == 0.0 ? CouplingRegime::kFree : CouplingRegime::kFinite;
  }
};

/// n_j = (N+1)/2 - j, j = 1..N.
std::vector<double> ground_state_quantum_numbers(int N);

/// c' = c / cos(kappa*pi/2). Infinite at kappa = 1 (c > 0) or when c is
/// already infinite; zero with the degenerate flag for c = 0, kappa = 1.
EffectiveCoupling effective_coupling(double c, double kappa);

/// r_j = k_j L - 2 pi n_j + sum_{l != j} 2 atan((k_j - k_l)/c').
std::vector<double> bethe_residuals(const std::vector<double>& k, double c_eff,
                                    const ModelParams& params);

struct SolverOptions {
  double tolerance = 1e-12;  // on max |r_j|
  int max_newton = 100;      // per continuation step
  int max_steps = 40;        // continuation steps
  double start_coupling = 1e6;
  /// Replace an infinite (or larger) c' by this finite value. Used to
  /// cross-check the hard-core determinant path against the permutation sum.
  double c_eff_cap = kInfinity;
};

struct BetheState {
  ModelParams params;
  double c_eff = 0.0;
  CouplingRegime regime = CouplingRegime::kFinite;
  bool degenerate_coupling = false;
  std::vector<double> quantum_numbers;
  std::vector<double> quasi_momenta;  // strictly decreasing
  double residual_norm = 0.0;
  double energy = 0.0;
  double total_momentum = 0.0;
  int iterations = 0;
  int continuation_steps = 0;
};

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, std::vector<double> last_iterate, double residual)
      : std::runtime_error(what), last_iterate_(std::move(last_iterate)), residual_(residual) {}

  const std::vector<double>& last_iterate() const { return last_iterate_; }
  double residual() const { return residual_; }

 private:
  std::vector<double> last_iterate_;
  double residual_;
};

/// Ground state of the logarithmic Bethe equations. Free (c' = 0) and
/// hard-core states are returned in closed form; finite c' is found by
/// damped Newton continued geometrically down from the hard-core end.
BetheState solve_ground_state(const ModelParams& params, const SolverOptions& options = {});

}  // namespace anyon
