#include "anyon/pipeline.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

namespace anyon {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class F>
auto stage(const char* name, F&& f) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

void finish_point(RunResult& out, const ModelParams& params, const RunOptions& options);

}  // namespace

RunResult run_point(const ModelParams& params, const RunOptions& options) {
  using clock = std::chrono::steady_clock;
  RunResult out;
  RunRecord& rec = out.record;
  rec.params = params;
  rec.grid = options.grid;

  auto t0 = clock::now();
  out.state = stage("solve", [&] { return solve_ground_state(params, options.solver); });
  rec.timings.solve = seconds_since(t0);

  try {
    finish_point(out, params, options);
  } catch (StageError& e) {
    e.partial["state"] = to_json(out.state);
    throw;
  }
  return out;
}

namespace {

void finish_point(RunResult& out, const ModelParams& params, const RunOptions& options) {
  using clock = std::chrono::steady_clock;
  RunRecord& rec = out.record;
  auto t0 = clock::now();
  const WavefnEvaluator ev = stage("wavefn", [&] { return WavefnEvaluator(out.state); });
  rec.timings.wavefn = seconds_since(t0);

  t0 = clock::now();
  out.rdm = stage("rdm", [&] {
    const QuadratureGrid outer =
        build_grid(options.grid.outer_panels, options.grid.outer_order, params.L);
    return options.parallel ? build_rdm(ev, outer, options.grid.inner)
                            : build_rdm_serial(ev, outer, options.grid.inner);
  });
  rec.timings.rdm = seconds_since(t0);

  t0 = clock::now();
  out.spectrum = stage("spectrum", [&] { return natural_occupations(out.rdm); });
  rec.toeplitz_deviation = toeplitz_deviation(out.rdm);
  rec.timings.spectrum = seconds_since(t0);

  if (options.mc_samples > 0) {
    stage("rdm", [&] {
      const std::size_t M = out.rdm.size();
      McSpotCheck mc;
      mc.x = out.rdm.grid.nodes[M / 4];
      mc.xp = out.rdm.grid.nodes[(3 * M) / 4];
      mc.quadrature = rdm_entry_raw(ev, mc.x, mc.xp, options.grid.inner);
      const McEstimate est = mc_rdm_entry(ev, mc.x, mc.xp, options.mc_samples, options.seed);
      mc.estimate = est.estimate;
      mc.std_error = est.std_error;
      rec.mc = mc;
      return 0;
    });
  }

  rec.c_eff = out.state.c_eff;
  rec.residual_norm = out.state.residual_norm;
  rec.iterations = out.state.iterations;
  rec.continuation_steps = out.state.continuation_steps;
  rec.energy = out.state.energy;
  rec.quasi_momenta = out.state.quasi_momenta;
  rec.outer_nodes = out.rdm.size();
  const auto& occ = out.spectrum.occupations;
  for (int e = 0; e < kTopOccupations; ++e)
    rec.occupations[e] = e < static_cast<int>(occ.size()) ? occ[e] : 0.0;
  rec.occupation_sum = std::accumulate(occ.begin(), occ.end(), 0.0);
  rec.entropy = out.spectrum.entropy;
  rec.truncation_mass = out.spectrum.truncation_mass;
  stage("record", [&] {
    validate_record(rec, options.solver.tolerance);
    return 0;
  });
}

}  // namespace

void validate_record(const RunRecord& r, double residual_tolerance) {
  const double top = std::accumulate(r.occupations.begin(), r.occupations.end(), 0.0);
  if (top > 1.0 + kPsdTolerance) throw std::runtime_error("top occupations sum above 1");
  if (!(r.entropy >= 0.0)) throw std::runtime_error("negative entropy");
  if (!(r.residual_norm < residual_tolerance))
    throw std::runtime_error("Bethe residual above tolerance");
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

nlohmann::json number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

}  // namespace

nlohmann::json to_json(const BetheState& s) {
  nlohmann::json j;
  j["N"] = s.params.N;
  j["L"] = s.params.L;
  j["c"] = number(s.params.c);
  j["kappa"] = s.params.kappa;
  j["c_eff"] = number(s.c_eff);
  j["regime"] = s.regime == CouplingRegime::kFree       ? "free"
                : s.regime == CouplingRegime::kHardcore ? "hardcore"
                                                        : "finite";
  j["degenerate_coupling"] = s.degenerate_coupling;
  j["quantum_numbers"] = s.quantum_numbers;
  j["quasi_momenta"] = s.quasi_momenta;
  j["residual_norm"] = s.residual_norm;
  j["energy"] = s.energy;
  j["total_momentum"] = s.total_momentum;
  j["iterations"] = s.iterations;
  j["continuation_steps"] = s.continuation_steps;
  return j;
}

nlohmann::json to_json(const RunRecord& r) {
  nlohmann::json j;
  j["schema_version"] = RunRecord::kSchemaVersion;
  j["params"] = {{"N", r.params.N},
                 {"L", r.params.L},
                 {"c", number(r.params.c)},
                 {"kappa", r.params.kappa}};
  j["solver"] = {{"c_eff", number(r.c_eff)},
                 {"residual_norm", r.residual_norm},
                 {"iterations", r.iterations},
                 {"continuation_steps", r.continuation_steps},
                 {"energy", r.energy},
                 {"quasi_momenta", r.quasi_momenta}};
  j["grid"] = {{"outer_panels", r.grid.outer_panels},
               {"outer_order", r.grid.outer_order},
               {"outer_nodes", r.outer_nodes},
               {"inner_scheme", to_string(r.grid.inner.scheme)},
               {"inner_panels", r.grid.inner.panels},
               {"inner_order", r.grid.inner.order}};
  j["occupations"] = r.occupations;
  j["occupation_sum"] = r.occupation_sum;
  j["entropy"] = r.entropy;
  j["truncation_mass"] = r.truncation_mass;
  j["toeplitz_deviation"] = r.toeplitz_deviation;
  j["timings"] = {{"solve_s", r.timings.solve},
                  {"wavefn_s", r.timings.wavefn},
                  {"rdm_s", r.timings.rdm},
                  {"spectrum_s", r.timings.spectrum}};
  if (r.mc) {
    j["mc_check"] = {{"x", r.mc->x},
                     {"xp", r.mc->xp},
                     {"quadrature", {r.mc->quadrature.real(), r.mc->quadrature.imag()}},
                     {"estimate", {r.mc->estimate.real(), r.mc->estimate.imag()}},
                     {"std_error", r.mc->std_error}};
  }
  return j;
}

void write_spectrum_csv(std::ostream& os, const OccupationSpectrum& s) {
  os << "eta,lambda\n";
  for (std::size_t e = 0; e < s.occupations.size(); ++e)
    os << e + 1 << ',' << format_double(s.occupations[e]) << '\n';
}

SweepAxis sweep_axis_from_string(const std::string& s) {
  if (s == "c") return SweepAxis::kC;
  if (s == "kappa") return SweepAxis::kKappa;
  throw std::invalid_argument("unknown sweep axis '" + s + "' (expected c|kappa)");
}

std::vector<SweepRow> sweep(SweepAxis axis, const std::vector<double>& values,
                            const ModelParams& fixed, const RunOptions& options, int workers) {
  std::vector<SweepRow> rows(values.size());
  auto compute = [&](std::size_t i, bool parallel_kernel) {
    SweepRow& row = rows[i];
    row.params = fixed;
    (axis == SweepAxis::kC ? row.params.c : row.params.kappa) = values[i];
    RunOptions opt = options;
    opt.parallel = parallel_kernel;
    try {
      const RunResult r = run_point(row.params, opt);
      row.entropy = r.record.entropy;
      row.occupations = r.record.occupations;
      row.residual = r.record.residual_norm;
      row.toeplitz_deviation = r.record.toeplitz_deviation;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  };
  const long n = static_cast<long>(values.size());
  if (workers > 1) {
#pragma omp parallel for num_threads(workers) schedule(dynamic, 1)
    for (long i = 0; i < n; ++i) compute(static_cast<std::size_t>(i), false);
  } else {
    for (long i = 0; i < n; ++i) compute(static_cast<std::size_t>(i), options.parallel);
  }
  return rows;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "c,kappa,S";
  for (int e = 1; e <= kTopOccupations; ++e) os << ",lambda" << e;
  os << ",residual,toeplitz_dev,error\n";
  for (const auto& r : rows) {
    os << format_double(r.params.c) << ',' << format_double(r.params.kappa) << ',';
    if (r.error.empty()) {
      os << format_double(r.entropy);
      for (double l : r.occupations) os << ',' << format_double(l);
      os << ',' << format_double(r.residual) << ',' << format_double(r.toeplitz_deviation) << ',';
    } else {
      os << std::string(kTopOccupations + 2, ',') << ',';
      std::string msg = r.error;
      std::replace(msg.begin(), msg.end(), ',', ';');
      std::replace(msg.begin(), msg.end(), '\n', ' ');
      os << msg;
    }
    os << '\n';
  }
}

}  // namespace anyon
