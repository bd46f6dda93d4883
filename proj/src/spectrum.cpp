#include "anyon/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace anyon {

OccupationSpectrum natural_occupations(const RdmMatrix& rdm, bool keep_orbitals) {
  const Eigen::Index M = rdm.values.rows();
  if (M == 0 || rdm.values.cols() != M || static_cast<std::size_t>(M) != rdm.grid.size())
    throw std::invalid_argument("natural_occupations: matrix and grid sizes disagree");

  const double scale = rdm.values.cwiseAbs().maxCoeff();
  const double asym = (rdm.values - rdm.values.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * std::max(scale, 1.0))
    throw std::invalid_argument("natural_occupations: matrix is not Hermitian (deviation " +
                                std::to_string(asym) + ")");

  Eigen::VectorXd sw(M);
  for (Eigen::Index i = 0; i < M; ++i) sw(i) = std::sqrt(rdm.grid.weights[i]);
  Eigen::MatrixXcd B = sw.asDiagonal() * rdm.values * sw.asDiagonal();
  B = 0.5 * (B + B.adjoint()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      B, keep_orbitals ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericError("natural_occupations: eigensolver failed");

  OccupationSpectrum out;
  const Eigen::VectorXd ev = es.eigenvalues();  // ascending
  out.min_eigenvalue = ev(0);
  if (ev(0) < -kPsdTolerance)
    throw NumericError("natural_occupations: eigenvalue " + std::to_string(ev(0)) +
                       " below PSD tolerance");
  out.occupations.resize(M);
  for (Eigen::Index e = 0; e < M; ++e) {
    double lam = ev(M - 1 - e);
    if (lam < kOccupationCutoff) {
      out.truncation_mass += std::abs(lam);
      lam = 0.0;
    }
    out.occupations[e] = lam;
  }
  out.entropy = von_neumann_entropy(out.occupations);

  if (keep_orbitals) {
    Eigen::MatrixXcd phi(M, M);
    for (Eigen::Index e = 0; e < M; ++e) phi.col(e) = es.eigenvectors().col(M - 1 - e).cwiseQuotient(
        sw.cast<cplx>());
    out.orbitals = std::move(phi);
  }
  return out;
}

double von_neumann_entropy(const std::vector<double>& occupations) {
  double s = 0.0, total = 0.0;
  for (double lam : occupations) {
    if (lam < -kPsdTolerance)
      throw std::invalid_argument("von_neumann_entropy: negative occupation " + std::to_string(lam));
    total += std::max(lam, 0.0);
    if (lam > 0.0) s -= lam * std::log2(lam);
  }
  if (total > 1.0 + kPsdTolerance)
    throw std::invalid_argument("von_neumann_entropy: occupations sum above 1");
  // lambda = 1 + eps contributes -O(eps)
  return std::max(s, 0.0);
}

double toeplitz_deviation(const RdmMatrix& rdm) {
  const std::size_t M = rdm.size();
  const double L = rdm.params.L;
  // Separations are bucketed at 1e-9 L resolution.
  auto key = [&](std::size_t i, std::size_t j) {
    double d = std::fmod(rdm.grid.nodes[j] - rdm.grid.nodes[i], L);
    if (d < 0.0) d += L;
    auto k = std::llround(d / L * 1e9);
    return k == 1000000000LL ? 0LL : static_cast<long long>(k);
  };
  std::map<long long, std::pair<double, int>> profile;
  for (std::size_t i = 0; i < M; ++i)
    for (std::size_t j = 0; j < M; ++j) {
      auto& p = profile[key(i, j)];
      p.first += std::abs(rdm.values(i, j));
      ++p.second;
    }
  double dev = 0.0;
  for (std::size_t i = 0; i < M; ++i)
    for (std::size_t j = 0; j < M; ++j) {
      const auto& p = profile[key(i, j)];
      dev = std::max(dev, std::abs(std::abs(rdm.values(i, j)) - p.first / p.second));
    }
  return dev;
}

}  // namespace anyon
