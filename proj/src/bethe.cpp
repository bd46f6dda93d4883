#include "anyon/bethe.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace anyon {

void ModelParams::validate() const {
  if (N < 2) throw std::invalid_argument("N must be >= 2");
  if (!(L > 0.0) || !std::isfinite(L)) throw std::invalid_argument("L must be finite and > 0");
  if (!(c >= 0.0)) throw std::invalid_argument("c must be >= 0");
  if (!(kappa >= 0.0 && kappa <= 1.0)) throw std::invalid_argument("kappa must lie in [0, 1]");
}

std::vector<double> ground_state_quantum_numbers(int N) {
  if (N < 2) throw std::invalid_argument("ground_state_quantum_numbers: N must be >= 2");
  std::vector<double> n(N);
  for (int j = 1; j <= N; ++j) n[j - 1] = 0.5 * (N + 1) - j;
  return n;
}

EffectiveCoupling effective_coupling(double c, double kappa) {
  if (!(kappa >= 0.0 && kappa <= 1.0))
    throw std::invalid_argument("effective_coupling: kappa must lie in [0, 1]");
  if (!(c >= 0.0)) throw std::invalid_argument("effective_coupling: c must be >= 0");
  if (c == 0.0) return {0.0, kappa == 1.0};
  if (c == kInfinity || kappa == 1.0) return {kInfinity, false};
  return {c / std::cos(0.5 * std::numbers::pi * kappa), false};
}

std::vector<double> bethe_residuals(const std::vector<double>& k, double c_eff,
                                    const ModelParams& params) {
  const auto n = ground_state_quantum_numbers(params.N);
  if (static_cast<int>(k.size()) != params.N)
    throw std::invalid_argument("bethe_residuals: need N quasi-momenta");
  std::vector<double> r(k.size());
  for (std::size_t j = 0; j < k.size(); ++j) {
    double s = k[j] * params.L - 2.0 * std::numbers::pi * n[j];
    for (std::size_t l = 0; l < k.size(); ++l)
      if (l != j) s += 2.0 * std::atan((k[j] - k[l]) / c_eff);
    r[j] = s;
  }
  return r;
}

namespace {

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

void finalize(BetheState& st) {
  const auto& k = st.quasi_momenta;
  st.energy = std::inner_product(k.begin(), k.end(), k.begin(), 0.0);
  st.total_momentum = std::accumulate(k.begin(), k.end(), 0.0);
}

// Damped Newton at fixed c'. Returns iterations used; k updated in place.
int newton(std::vector<double>& k, double c_eff, const ModelParams& p, const SolverOptions& opt) {
  const int N = p.N;
  auto r = bethe_residuals(k, c_eff, p);
  double rn = max_abs(r);
  for (int it = 0; it < opt.max_newton; ++it) {
    if (rn < opt.tolerance) return it;
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(N, N);
    for (int j = 0; j < N; ++j) {
      J(j, j) = p.L;
      for (int l = 0; l < N; ++l) {
        if (l == j) continue;
        const double d = k[j] - k[l];
        const double g = 2.0 * c_eff / (c_eff * c_eff + d * d);
        J(j, j) += g;
        J(j, l) = -g;
      }
    }
    Eigen::VectorXd rhs = Eigen::Map<Eigen::VectorXd>(r.data(), N);
    const Eigen::VectorXd dk = J.ldlt().solve(-rhs);

    double t = 1.0;
    std::vector<double> trial(N);
    std::vector<double> rt;
    double rtn = 0.0;
    for (int h = 0; h < 40; ++h) {
      for (int j = 0; j < N; ++j) trial[j] = k[j] + t * dk(j);
      rt = bethe_residuals(trial, c_eff, p);
      rtn = max_abs(rt);
      if (rtn < rn || rtn < opt.tolerance) break;
      t *= 0.5;
    }
    if (!(rtn < rn) && !(rtn < opt.tolerance)) {
      // no descent: already at the floating-point floor
      return -1;
    }
    k = trial;
    r = rt;
    rn = rtn;
  }
  return rn < opt.tolerance ? opt.max_newton : -1;
}

}  // namespace

BetheState solve_ground_state(const ModelParams& params, const SolverOptions& options) {
  params.validate();
  const int N = params.N;
  BetheState st;
  st.params = params;
  st.quantum_numbers = ground_state_quantum_numbers(N);

  const EffectiveCoupling ec = effective_coupling(params.c, params.kappa);
  st.degenerate_coupling = ec.degenerate;
  double target = std::min(ec.value, options.c_eff_cap);
  st.c_eff = target;

  if (target == 0.0) {
    st.regime = CouplingRegime::kFree;
    st.quasi_momenta.assign(N, 0.0);
    st.residual_norm = 0.0;
    finalize(st);
    return st;
  }

  std::vector<double> k(N);
  for (int j = 0; j < N; ++j) k[j] = 2.0 * std::numbers::pi * st.quantum_numbers[j] / params.L;

  if (target == kInfinity) {
    st.regime = CouplingRegime::kHardcore;
    st.quasi_momenta = k;
    st.residual_norm = 0.0;
    finalize(st);
    return st;
  }
  st.regime = CouplingRegime::kFinite;

  // Geometric schedule from the stiff end; a target above the start value
  // is solved directly from the hard-core guess.
  std::vector<double> schedule;
  const double start = options.start_coupling;
  if (target >= start) {
    schedule.push_back(target);
  } else {
    const int steps = std::max(1, options.max_steps);
    const double ratio = std::log(target / start) / steps;
    for (int s = 0; s < steps; ++s) schedule.push_back(start * std::exp(ratio * s));
    schedule.push_back(target);
  }

  int total_iters = 0;
  for (std::size_t s = 0; s < schedule.size(); ++s) {
    const bool last = s + 1 == schedule.size();
    SolverOptions step_opt = options;
    if (!last) step_opt.tolerance = std::max(options.tolerance, 1e-8);
    const int it = newton(k, schedule[s], params, step_opt);
    const double rn = max_abs(bethe_residuals(k, schedule[s], params));
    if (it < 0 && !(rn < step_opt.tolerance)) {
      throw SolverError("Bethe solver did not converge at c' = " + std::to_string(schedule[s]),
                        k, rn);
    }
    total_iters += std::max(it, 0);
  }

  st.quasi_momenta = k;
  st.residual_norm = max_abs(bethe_residuals(k, target, params));
  st.iterations = total_iters;
  st.continuation_steps = static_cast<int>(schedule.size());
  if (!(st.residual_norm < options.tolerance))
    throw SolverError("Bethe residual above tolerance", k, st.residual_norm);
  for (int j = 0; j + 1 < N; ++j)
    if (!(k[j] > k[j + 1]))
      throw SolverError("quasi-momenta not strictly decreasing", k, st.residual_norm);
  finalize(st);
  return st;
}

}  // namespace anyon
