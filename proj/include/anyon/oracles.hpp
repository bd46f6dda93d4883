#pragma once

#include "anyon/bethe.hpp"
#include "anyon/rdm.hpp"
#include "anyon/spectrum.hpp"

#include <vector>

namespace anyon {

/// Independent two-particle reference. Shares only the outer grid and the
/// Nystrom eigensolver with the main pipeline.
struct N2Reference {
  double c_eff = 0.0;
  double k0 = 0.0;
  double entropy = 0.0;
  std::vector<double> occupations;
};

/// Root of k L = pi - 2 atan(2k / c') on (0, pi/L] by bisection.
double solve_n2(double c_eff, double L);

/// psi(x1, x2) = exp(-i kappa pi/2 sign(x1 - x2)) cos(k0 (|x1 - x2| - L/2)).
cplx psi_n2(double k0, double kappa, double L, double x1, double x2);

/// rho_1 at N = 2 with the one-dimensional inner integral done by adaptive
/// Gauss-Kronrod on the pieces between 0, x, x', L (relative error ~1e-12).
RdmMatrix rdm_n2(double c, double kappa, double L, int outer_panels, int outer_order);

N2Reference entropy_n2(double c, double kappa, double L, int outer_panels, int outer_order);

}  // namespace anyon
