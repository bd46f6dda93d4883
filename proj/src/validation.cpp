#include "anyon/validation.hpp"

#include "anyon/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

namespace anyon {

CheckResult make_check(std::string name, double value, double threshold) {
  return {std::move(name), value, threshold, value < threshold};
}

namespace {

std::string point_label(double c, double kappa) {
  std::ostringstream os;
  os << "c=" << format_double(c) << ",kappa=" << format_double(kappa);
  return os.str();
}

std::vector<double> random_tuple(std::mt19937_64& gen, int n, double L) {
  std::uniform_real_distribution<double> u(0.0, L);
  std::vector<double> x(n);
  for (auto& v : x) v = u(gen);
  return x;
}

}  // namespace

std::vector<CheckResult> check_oracle_equivalence(const std::vector<double>& couplings,
                                                  const std::vector<double>& kappas,
                                                  const GridSpec& grid, double tolerance) {
  std::vector<CheckResult> out;
  RunOptions opt;
  opt.grid = grid;
  for (double c : couplings)
    for (double kappa : kappas) {
      const ModelParams p{2, 1.0, c, kappa};
      const double s = run_point(p, opt).record.entropy;
      const double ref = entropy_n2(c, kappa, p.L, grid.outer_panels, grid.outer_order).entropy;
      out.push_back(make_check("oracle_n2[" + point_label(c, kappa) + "]", std::abs(s - ref), tolerance));
    }
  return out;
}

CheckResult check_hardcore_crosspath(int N, double L, double kappa, int tuples, std::uint64_t seed,
                                     double cap, double tolerance) {
  const ModelParams p{N, L, kInfinity, kappa};
  SolverOptions so;
  so.c_eff_cap = cap;
  const WavefnEvaluator finite(solve_ground_state(p, so));
  std::mt19937_64 gen(seed);
  std::vector<cplx> a(tuples), b(tuples);
  for (int t = 0; t < tuples; ++t) {
    const auto x = random_tuple(gen, N, L);
    a[t] = eval_psi_hardcore(p, x);
    b[t] = finite(x);
  }
  // Both paths differ by a constant factor; fit it, then compare on the
  // scale of the wavefunction (near contacts the pointwise ratio is
  // dominated by the O(1/c') offset).
  cplx num(0.0, 0.0);
  double den = 0.0, scale = 0.0;
  for (int t = 0; t < tuples; ++t) {
    num += std::conj(b[t]) * a[t];
    den += std::norm(b[t]);
    scale = std::max(scale, std::abs(b[t]));
  }
  const cplx ratio = num / den;
  double worst = 0.0;
  for (int t = 0; t < tuples; ++t) worst = std::max(worst, std::abs(a[t] / ratio - b[t]) / scale);
  return make_check("hardcore_crosspath[N=" + std::to_string(N) + "," + point_label(cap, kappa) + "]",
                    worst, tolerance);
}

CheckResult check_exchange_symmetry(const ModelParams& params, int tuples, std::uint64_t seed,
                                    const WavefnOptions& wopt, double tolerance) {
  const WavefnEvaluator ev(solve_ground_state(params), wopt);
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<int> pick(0, params.N - 1);
  double worst = 0.0;
  for (int t = 0; t < tuples;) {
    const auto x = random_tuple(gen, params.N, params.L);
    int i = pick(gen), j = pick(gen);
    if (i == j) continue;
    if (i > j) std::swap(i, j);
    try {
      worst = std::max(worst, exchange_residual(ev, x, i, j));
      ++t;
    } catch (const DegeneratePointError&) {
    }
  }
  return make_check("exchange_symmetry[" + point_label(params.c, params.kappa) + "]", worst, tolerance);
}

CheckResult check_twisted_boundary(const ModelParams& params, int tuples, std::uint64_t seed,
                                   const WavefnOptions& wopt, double tolerance) {
  const WavefnEvaluator ev(solve_ground_state(params), wopt);
  std::mt19937_64 gen(seed);
  const cplx twist = std::polar(1.0, std::numbers::pi * params.kappa * (params.N - 1));
  double worst = 0.0;
  for (int t = 0; t < tuples;) {
    auto x = random_tuple(gen, params.N, params.L);
    x[0] = 0.0;
    const cplx at0 = ev(x);
    x[0] = params.L;
    const cplx atL = ev(x);
    if (std::abs(at0) < 1e-8) continue;
    worst = std::max(worst, std::abs(at0 - twist * atL) / std::abs(at0));
    ++t;
  }
  return make_check("twisted_boundary[" + point_label(params.c, params.kappa) + "]", worst, tolerance);
}

std::vector<CheckResult> check_rdm_invariants(const RunResult& run, const GridSpec& grid) {
  std::vector<CheckResult> out;
  const std::string tag = "[" + point_label(run.record.params.c, run.record.params.kappa) + "]";
  const WavefnEvaluator ev(run.state);
  const RdmMatrix& r = run.rdm;
  const std::size_t M = r.size();
  // lower-triangle entries integrated directly, compared with the stored conjugates
  double herm = 0.0;
  for (std::size_t s = 0; s < 6; ++s) {
    const std::size_t i = (5 * s + 3) % M, j = (11 * s + 1) % M;
    if (i <= j) continue;
    const cplx direct = rdm_entry_raw(ev, r.grid.nodes[i], r.grid.nodes[j], grid.inner) / r.trace_raw;
    herm = std::max(herm, std::abs(direct - std::conj(r.values(j, i))));
  }
  out.push_back(make_check("rdm_hermitian" + tag, herm, 1e-10));
  out.push_back(make_check("rdm_unit_trace" + tag, std::abs(r.weighted_trace() - 1.0), 1e-10));
  double sum = 0.0;
  for (double l : run.spectrum.occupations) sum += l;
  out.push_back(make_check("occupation_sum" + tag, std::abs(sum - 1.0), 1e-8));
  out.push_back(make_check("psd_margin" + tag, -run.spectrum.min_eigenvalue, kPsdTolerance));
  return out;
}

CheckResult check_mc_entry(const ModelParams& params, double x, double xp, const InnerSpec& inner,
                           std::int64_t samples, std::uint64_t seed) {
  const WavefnEvaluator ev(solve_ground_state(params));
  const cplx q = rdm_entry_raw(ev, x, xp, inner);
  const McEstimate mc = mc_rdm_entry(ev, x, xp, samples, seed);
  const double z = std::abs(q - mc.estimate) / std::max(mc.std_error, 1e-300);
  CheckResult c = make_check("mc_entry[" + point_label(params.c, params.kappa) + "] (in std errors)",
                             mc.std_error == 0.0 ? std::abs(q - mc.estimate) : z, 3.0);
  return c;
}

std::vector<CheckResult> run_validation(const ValidationOptions& o) {
  std::vector<CheckResult> all;
  auto append = [&all](std::vector<CheckResult> v) { all.insert(all.end(), v.begin(), v.end()); };

  append(check_oracle_equivalence({0.1, 1.0, 10.0, 100.0}, {0.0, 0.25, 0.5, 0.75, 1.0}, o.grid));
  for (int N : {2, 4})
    for (double kappa : {0.0, 0.5})
      all.push_back(check_hardcore_crosspath(N, 1.0, kappa, 100, o.seed));

  WavefnOptions wopt;
  wopt.flip_phase_sign = o.mutate_phase;
  std::uint64_t seed = o.seed;
  for (double c : {1.0, 10.0, 100.0})
    for (double kappa : {0.0, 0.5, 0.75}) {
      const ModelParams p{4, 1.0, c, kappa};
      all.push_back(check_exchange_symmetry(p, 100, ++seed, wopt));
      all.push_back(check_twisted_boundary(p, 100, ++seed, wopt));
    }

  RunOptions ro;
  ro.grid = o.grid;
  const ModelParams p{4, 1.0, 10.0, 0.5};
  const RunResult run = run_point(p, ro);
  append(check_rdm_invariants(run, o.grid));
  if (o.mc_samples >= 1000)
    all.push_back(check_mc_entry({4, 1.0, 1.0, 0.25}, 0.25, 0.75, o.grid.inner, o.mc_samples, o.seed));
  return all;
}

void write_checks_csv(std::ostream& os, const std::vector<CheckResult>& checks) {
  os << "check,value,threshold,pass\n";
  for (const auto& c : checks)
    os << '"' << c.name << "\"," << format_double(c.value) << ',' << format_double(c.threshold) << ','
       << (c.pass ? "true" : "false") << '\n';
}

}  // namespace anyon
