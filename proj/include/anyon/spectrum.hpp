#pragma once

#include "anyon/rdm.hpp"

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <vector>

namespace anyon {

/// Eigenvalues below this are dropped from the entropy sum.
inline constexpr double kOccupationCutoff = 1e-12;
/// Most negative eigenvalue tolerated as quadrature noise.
inline constexpr double kPsdTolerance = 1e-8;

struct OccupationSpectrum {
  std::vector<double> occupations;  // descending, length M
  double entropy = 0.0;             // bits
  double truncation_mass = 0.0;     // sum of |lambda| clamped to zero
  double min_eigenvalue = 0.0;      // before clamping
  /// Column eta holds phi_eta at the grid nodes, orthonormal under the
  /// quadrature weights.
  std::optional<Eigen::MatrixXcd> orbitals;
};

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Symmetric Nystrom discretization: diagonalizes B = W^1/2 rho W^1/2.
OccupationSpectrum natural_occupations(const RdmMatrix& rdm, bool keep_orbitals = false);

/// -sum lambda log2 lambda over lambda > 0.
double von_neumann_entropy(const std::vector<double>& occupations);

/// max_ij | |rho_ij| - g((x_j - x_i) mod L) | where g averages |rho| over all
/// pairs sharing the same separation.
double toeplitz_deviation(const RdmMatrix& rdm);

}  // namespace anyon
