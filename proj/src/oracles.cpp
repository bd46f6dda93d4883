#include "anyon/oracles.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace anyon {

double solve_n2(double c_eff, double L) {
  if (!(c_eff > 0.0)) throw std::invalid_argument("solve_n2: c' must be > 0");
  if (!(L > 0.0)) throw std::invalid_argument("solve_n2: L must be > 0");
  const double pi = std::numbers::pi;
  auto f = [&](double k) {
    const double a = c_eff == kInfinity ? 0.0 : 2.0 * std::atan(2.0 * k / c_eff);
    return pi - a - k * L;
  };
  double lo = 0.0, hi = pi / L;
  if (f(hi) >= 0.0) return hi;
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return std::abs(f(lo)) < std::abs(f(hi)) ? lo : hi;
}

cplx psi_n2(double k0, double kappa, double L, double x1, double x2) {
  const int s = (x1 > x2) - (x1 < x2);
  const double r = std::abs(x1 - x2);
  return std::polar(std::cos(k0 * (r - 0.5 * L)), -0.5 * std::numbers::pi * kappa * s);
}

RdmMatrix rdm_n2(double c, double kappa, double L, int outer_panels, int outer_order) {
  ModelParams p{2, L, c, kappa};
  p.validate();
  const EffectiveCoupling ec = effective_coupling(c, kappa);
  const double k0 = ec.value == 0.0 ? 0.0 : solve_n2(ec.value, L);

  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  RdmMatrix r;
  r.params = p;
  r.grid = build_grid(outer_panels, outer_order, L);
  const std::size_t M = r.grid.size();
  r.values.resize(M, M);
  for (std::size_t i = 0; i < M; ++i)
    for (std::size_t j = i; j < M; ++j) {
      const double x = r.grid.nodes[i], xp = r.grid.nodes[j];
      std::vector<double> cuts{0.0, std::min(x, xp), std::max(x, xp), L};
      double re = 0.0, im = 0.0;
      for (std::size_t q = 0; q + 1 < cuts.size(); ++q) {
        if (!(cuts[q + 1] > cuts[q])) continue;
        re += GK::integrate(
            [&](double y) { return (std::conj(psi_n2(k0, kappa, L, x, y)) * psi_n2(k0, kappa, L, xp, y)).real(); },
            cuts[q], cuts[q + 1], 6, 1e-12);
        im += GK::integrate(
            [&](double y) { return (std::conj(psi_n2(k0, kappa, L, x, y)) * psi_n2(k0, kappa, L, xp, y)).imag(); },
            cuts[q], cuts[q + 1], 6, 1e-12);
      }
      r.values(i, j) = cplx(re, i == j ? 0.0 : im);
      r.values(j, i) = std::conj(r.values(i, j));
    }
  r.trace_raw = r.weighted_trace();
  r.values /= r.trace_raw;
  return r;
}

N2Reference entropy_n2(double c, double kappa, double L, int outer_panels, int outer_order) {
  const EffectiveCoupling ec = effective_coupling(c, kappa);
  N2Reference ref;
  ref.c_eff = ec.value;
  ref.k0 = ec.value == 0.0 ? 0.0 : solve_n2(ec.value, L);
  const OccupationSpectrum s = natural_occupations(rdm_n2(c, kappa, L, outer_panels, outer_order));
  ref.entropy = s.entropy;
  ref.occupations = s.occupations;
  return ref;
}

}  // namespace anyon
