#pragma once

#include "anyon/quadrature.hpp"
#include "anyon/wavefn.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace anyon {

/// How the (N-1)-dimensional inner integrals are discretized.
///
/// kSector splits [0, L] at `panels` uniform cuts plus the outer points x, x',
/// and integrates the ordered inner coordinates over every product of
/// ordered simplices between consecutive cuts. The integrand is analytic on
/// each piece, so convergence in `order` is spectral.
///
/// kTensor is a composite tensor-product Gauss-Legendre grid with panel
/// splits at x and x' only; cusps on x_i = x_j remain inside panels.
enum class InnerScheme { kSector, kTensor };

struct InnerSpec {
  InnerScheme scheme = InnerScheme::kSector;
  int panels = 2;
  int order = 8;
};

std::string to_string(InnerScheme s);
InnerScheme inner_scheme_from_string(const std::string& s);

class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Trace-normalized one-particle density matrix sampled on a quadrature grid.
struct RdmMatrix {
  ModelParams params;
  QuadratureGrid grid;
  Eigen::MatrixXcd values;  // rho(node_i, node_j)
  double trace_raw = 0.0;

  std::size_t size() const { return grid.size(); }
  /// sum_i w_i rho(x_i, x_i)
  double weighted_trace() const;
};

/// Unnormalized integral over the N-1 inner coordinates of
/// conj(psi(x, X)) psi(x', X). `outer_slot` selects which argument of psi
/// carries x (0 = first particle).
cplx rdm_entry_raw(const WavefnEvaluator& ev, double x, double xp, const InnerSpec& inner,
                   int outer_slot = 0);

/// OpenMP over the upper triangle. Bit-identical to build_rdm_serial for any
/// thread count: each entry is summed in a fixed order by one thread.
RdmMatrix build_rdm(const WavefnEvaluator& ev, const QuadratureGrid& outer, const InnerSpec& inner);

/// Single-threaded reference kernel.
RdmMatrix build_rdm_serial(const WavefnEvaluator& ev, const QuadratureGrid& outer,
                           const InnerSpec& inner);

struct McEstimate {
  cplx estimate;
  double std_error = 0.0;
};

/// Uniform Monte Carlo estimate of rdm_entry_raw; deterministic for a seed.
McEstimate mc_rdm_entry(const WavefnEvaluator& ev, double x, double xp, std::int64_t samples,
                        std::uint64_t seed);

/// Text dump: header "N L c kappa M", M lines "node weight", then M*M lines
/// "re im" in row-major order. Full double precision.
void write_rdm_text(std::ostream& os, const RdmMatrix& rdm);
RdmMatrix read_rdm_text(std::istream& is);

}  // namespace anyon
