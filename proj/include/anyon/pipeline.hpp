#pragma once

#include "anyon/bethe.hpp"
#include "anyon/rdm.hpp"
#include "anyon/spectrum.hpp"
#include "anyon/wavefn.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace anyon {

struct GridSpec {
  int outer_panels = 8;
  int outer_order = 4;
  InnerSpec inner;
};

struct RunOptions {
  GridSpec grid;
  SolverOptions solver;
  bool parallel = true;  // OpenMP RDM kernel; false selects the serial kernel
  std::int64_t mc_samples = 0;  // > 0 adds a Monte Carlo spot check of one entry
  std::uint64_t seed = 20240611;
};

struct StageTimings {
  double solve = 0.0;
  double wavefn = 0.0;
  double rdm = 0.0;
  double spectrum = 0.0;
};

struct McSpotCheck {
  double x = 0.0, xp = 0.0;
  cplx quadrature;
  cplx estimate;
  double std_error = 0.0;
};

inline constexpr int kTopOccupations = 8;

struct RunRecord {
  static constexpr int kSchemaVersion = 1;

  ModelParams params;
  double c_eff = 0.0;
  double residual_norm = 0.0;
  int iterations = 0;
  int continuation_steps = 0;
  double energy = 0.0;
  std::vector<double> quasi_momenta;
  GridSpec grid;
  std::size_t outer_nodes = 0;
  std::array<double, kTopOccupations> occupations{};
  double occupation_sum = 0.0;
  double entropy = 0.0;
  double truncation_mass = 0.0;
  double toeplitz_deviation = 0.0;
  StageTimings timings;
  std::optional<McSpotCheck> mc;
};

struct RunResult {
  BetheState state;
  RdmMatrix rdm;
  OccupationSpectrum spectrum;
  RunRecord record;
};

/// Failure in one pipeline stage ("solve", "wavefn", "rdm", "spectrum").
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

  nlohmann::json partial;  // artifacts of the stages that completed

 private:
  std::string stage_;
};

/// solve -> wavefunction -> rho_1 -> spectrum for one parameter point.
RunResult run_point(const ModelParams& params, const RunOptions& options);

/// Throws std::runtime_error if the record violates its invariants.
void validate_record(const RunRecord& record, double residual_tolerance);

nlohmann::json to_json(const RunRecord& record);
nlohmann::json to_json(const BetheState& state);

/// Columns eta,lambda with eta starting at 1.
void write_spectrum_csv(std::ostream& os, const OccupationSpectrum& spectrum);

enum class SweepAxis { kC, kKappa };
SweepAxis sweep_axis_from_string(const std::string& s);

struct SweepRow {
  ModelParams params;
  double entropy = 0.0;
  std::array<double, kTopOccupations> occupations{};
  double residual = 0.0;
  double toeplitz_deviation = 0.0;
  std::string error;  // empty on success
};

/// Points are independent. workers > 1 runs points concurrently with the
/// serial RDM kernel; workers == 1 runs them in order with the OpenMP
/// kernel. Output order and values do not depend on workers.
std::vector<SweepRow> sweep(SweepAxis axis, const std::vector<double>& values,
                            const ModelParams& fixed, const RunOptions& options, int workers = 1);

/// Header c,kappa,S,lambda1..lambda8,residual,toeplitz_dev,error.
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

/// Shortest round-trip formatting with 17 significant digits; "inf" for c = inf.
std::string format_double(double v);

}  // namespace anyon
