#include "anyon/pipeline.hpp"
#include "anyon/validation.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace anyon;

namespace {

struct Flags {
  ModelParams params;
  bool hardcore = false;
  double c_eff_cap = kInfinity;
  GridSpec grid;
  std::string inner_scheme = "sector";
  std::int64_t mc_samples = 0;
  std::uint64_t seed = 20240611;
  int workers = 1;
  bool serial = false;
  std::string out = ".";

  // sweep
  std::string axis = "c";
  std::vector<double> values;
  double from = 0.0, to = 1.0;
  int points = 6;
  bool log_spaced = false;

  // run / rdm
  bool dump_rdm = false;

  // validate
  bool mutate_phase = false;
};

ModelParams model(const Flags& f) {
  ModelParams p = f.params;
  if (f.hardcore) p.c = kInfinity;
  p.validate();
  return p;
}

RunOptions run_options(const Flags& f) {
  RunOptions o;
  o.grid = f.grid;
  o.grid.inner.scheme = inner_scheme_from_string(f.inner_scheme);
  o.solver.c_eff_cap = f.c_eff_cap;
  o.parallel = !f.serial;
  o.mc_samples = f.mc_samples;
  o.seed = f.seed;
  return o;
}

std::string timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::ostringstream os;
  os << std::put_time(std::gmtime(&t), "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream os(p);
  if (!os) throw std::runtime_error("cannot write " + p.string());
  return os;
}

void write_json(const fs::path& p, const nlohmann::json& j) {
  auto os = open_out(p);
  os << j.dump(2) << '\n';
}

std::vector<double> sweep_values(const Flags& f) {
  if (!f.values.empty()) return f.values;
  if (f.points < 2) throw std::invalid_argument("--points must be at least 2");
  std::vector<double> v(f.points);
  for (int i = 0; i < f.points; ++i) {
    const double t = static_cast<double>(i) / (f.points - 1);
    if (f.log_spaced) {
      if (!(f.from > 0.0 && f.to > 0.0)) throw std::invalid_argument("--log needs positive bounds");
      v[i] = f.from * std::pow(f.to / f.from, t);
    } else {
      v[i] = f.from + (f.to - f.from) * t;
    }
  }
  v.back() = f.to;
  return v;
}

int cmd_solve(const Flags& f) {
  SolverOptions so;
  so.c_eff_cap = f.c_eff_cap;
  const BetheState s = solve_ground_state(model(f), so);
  nlohmann::json j = to_json(s);
  j["schema_version"] = RunRecord::kSchemaVersion;
  j["timestamp"] = timestamp();
  write_json(fs::path(f.out) / "state.json", j);
  std::cout << "c_eff " << format_double(s.c_eff) << "  residual " << s.residual_norm
            << "  energy " << format_double(s.energy) << '\n';
  std::cout << "k:";
  for (double k : s.quasi_momenta) std::cout << ' ' << format_double(k);
  std::cout << '\n';
  return 0;
}

int cmd_run(const Flags& f, bool rdm_only) {
  const fs::path out(f.out);
  RunResult r;
  try {
    r = run_point(model(f), run_options(f));
  } catch (const StageError& e) {
    nlohmann::json j;
    j["schema_version"] = RunRecord::kSchemaVersion;
    j["timestamp"] = timestamp();
    j["error"] = {{"stage", e.stage()}, {"message", e.what()}};
    j.update(e.partial);
    write_json(out / "run.json", j);
    std::cerr << "error in stage " << e.stage() << ": " << e.what() << '\n';
    return 2;
  }
  if (rdm_only || f.dump_rdm) {
    auto os = open_out(out / "rdm.txt");
    write_rdm_text(os, r.rdm);
  }
  if (!rdm_only) {
    nlohmann::json j = to_json(r.record);
    j["timestamp"] = timestamp();
    write_json(out / "run.json", j);
    auto os = open_out(out / "spectrum.csv");
    write_spectrum_csv(os, r.spectrum);
  }
  std::cout << "M " << r.rdm.size() << "  S " << format_double(r.record.entropy) << "  lambda1 "
            << format_double(r.record.occupations[0]) << "  toeplitz_dev "
            << r.record.toeplitz_deviation << '\n';
  return 0;
}

int cmd_sweep(const Flags& f) {
  const std::vector<double> values = sweep_values(f);
  const auto rows =
      sweep(sweep_axis_from_string(f.axis), values, model(f), run_options(f), f.workers);
  auto os = open_out(fs::path(f.out) / "sweep.csv");
  write_sweep_csv(os, rows);
  int failures = 0;
  for (const auto& row : rows) {
    if (!row.error.empty()) ++failures;
    std::cout << f.axis << '=' << format_double(f.axis == "c" ? row.params.c : row.params.kappa)
              << "  S " << (row.error.empty() ? format_double(row.entropy) : "error: " + row.error)
              << '\n';
  }
  return failures ? 3 : 0;
}

int cmd_validate(const Flags& f) {
  ValidationOptions vo;
  vo.grid = run_options(f).grid;
  if (f.mc_samples > 0) vo.mc_samples = f.mc_samples;
  vo.seed = f.seed;
  vo.mutate_phase = f.mutate_phase;
  const auto checks = run_validation(vo);
  auto os = open_out(fs::path(f.out) / "checks.csv");
  write_checks_csv(os, checks);
  int failures = 0;
  for (const auto& c : checks) {
    if (!c.pass) ++failures;
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << "  " << c.value << " < " << c.threshold
              << '\n';
  }
  std::cout << checks.size() - failures << '/' << checks.size() << " checks passed\n";
  return failures ? 1 : 0;
}

void add_model_flags(CLI::App& app, Flags& f) {
  app.add_option("--N", f.params.N, "particle number")->capture_default_str();
  app.add_option("--L", f.params.L, "ring length")->capture_default_str();
  app.add_option("--c", f.params.c, "contact coupling (inf allowed)")->capture_default_str();
  app.add_option("--kappa", f.params.kappa, "statistical parameter in [0,1]")
      ->capture_default_str();
  app.add_flag("--hardcore", f.hardcore, "infinite coupling, determinant path");
  app.add_option("--c-eff-cap", f.c_eff_cap, "clamp the effective coupling (cross-checks)");
  app.add_option("--outer-panels", f.grid.outer_panels)->capture_default_str();
  app.add_option("--outer-order", f.grid.outer_order)->capture_default_str();
  app.add_option("--inner-panels", f.grid.inner.panels)->capture_default_str();
  app.add_option("--inner-order", f.grid.inner.order)->capture_default_str();
  app.add_option("--inner-scheme", f.inner_scheme, "sector|tensor")->capture_default_str();
  app.add_option("--mc-samples", f.mc_samples, "Monte Carlo spot-check samples");
  app.add_option("--seed", f.seed)->capture_default_str();
  app.add_option("--workers", f.workers, "concurrent sweep points")->capture_default_str();
  app.add_flag("--serial", f.serial, "use the serial RDM kernel");
  app.add_option("--out", f.out, "output directory")->capture_default_str();
  app.add_option("--axis", f.axis, "sweep axis: c|kappa")->capture_default_str();
  app.add_option("--values", f.values, "explicit sweep values")->delimiter(',');
  app.add_option("--from", f.from);
  app.add_option("--to", f.to);
  app.add_option("--points", f.points)->capture_default_str();
  app.add_flag("--log", f.log_spaced, "log-spaced sweep values");
  app.add_flag("--dump-rdm", f.dump_rdm, "also write rdm.txt");
  app.add_flag("--mutate-phase", f.mutate_phase, "flip the anyonic phase sign (mutation test)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement of one-dimensional anyons from the Bethe ansatz"};
  app.set_config("--config", "", "flat key = value file mirroring the flags");
  app.require_subcommand(1);
  app.fallthrough();
  Flags f;
  add_model_flags(app, f);

  auto* solve = app.add_subcommand("solve", "solve the Bethe equations");
  auto* run = app.add_subcommand("run", "single point: run.json, spectrum.csv");
  auto* sweep_cmd = app.add_subcommand("sweep", "sweep c or kappa: sweep.csv");
  auto* rdm = app.add_subcommand("rdm", "write the density matrix as rdm.txt");
  auto* validate = app.add_subcommand("validate", "oracle and invariant checks: checks.csv");

  CLI11_PARSE(app, argc, argv);

  try {
    fs::create_directories(f.out);
    if (*solve) return cmd_solve(f);
    if (*run) return cmd_run(f, false);
    if (*sweep_cmd) return cmd_sweep(f);
    if (*rdm) return cmd_run(f, true);
    if (*validate) return cmd_validate(f);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
