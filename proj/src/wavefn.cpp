#include "anyon/wavefn.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace anyon {

SectorDecomposition sort_to_sector(std::span<const double> x, double L) {
  for (double v : x)
    if (!(v >= 0.0 && v <= L))
      throw std::invalid_argument("sort_to_sector: coordinate " + std::to_string(v) +
                                  " outside [0, L]");
  SectorDecomposition s;
  s.sorting_perm.resize(x.size());
  std::iota(s.sorting_perm.begin(), s.sorting_perm.end(), 0);
  std::stable_sort(s.sorting_perm.begin(), s.sorting_perm.end(),
                   [&](int a, int b) { return x[a] < x[b]; });
  s.sorted_coords.reserve(x.size());
  for (int i : s.sorting_perm) s.sorted_coords.push_back(x[i]);
  return s;
}

cplx anyonic_phase(std::span<const double> x, double kappa) {
  if (kappa == 0.0) return {1.0, 0.0};
  int e = 0;
  for (std::size_t a = 0; a < x.size(); ++a)
    for (std::size_t b = a + 1; b < x.size(); ++b) e += step_sign(x[a] - x[b]);
  return std::polar(1.0, -0.5 * std::numbers::pi * kappa * e);
}

double exchange_angle(std::span<const double> x, int i, int j, double kappa) {
  int s = 0;
  for (int k = i + 1; k <= j; ++k) s += step_sign(x[i] - x[k]);
  for (int k = i + 1; k <= j - 1; ++k) s -= step_sign(x[j] - x[k]);
  return kappa * std::numbers::pi * s;
}

namespace {

int inversion_sign(const int* p, int n) {
  int inv = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) inv += p[a] > p[b];
  return inv % 2 ? -1 : 1;
}

// det[exp(i k_a y_b)] with column b given by cols[b].
template <class Matrix>
cplx slater_from_columns(const cplx* const* cols, int n) {
  Matrix m;
  m.resize(n, n);
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a) m(a, b) = cols[b][a];
  return m.determinant();
}

// Fixed sizes get Eigen's closed-form determinants.
cplx slater(const cplx* const* cols, int n) {
  switch (n) {
    case 2: return slater_from_columns<Eigen::Matrix2cd>(cols, 2);
    case 3: return slater_from_columns<Eigen::Matrix3cd>(cols, 3);
    case 4: return slater_from_columns<Eigen::Matrix4cd>(cols, 4);
    default: break;
  }
  return n <= kMaxPermutationN
             ? slater_from_columns<Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, 0,
                                                 kMaxPermutationN, kMaxPermutationN>>(cols, n)
             : slater_from_columns<Eigen::MatrixXcd>(cols, n);
}

cplx slater_determinant(const std::vector<double>& k, std::span<const double> sorted) {
  const int n = static_cast<int>(k.size());
  std::vector<cplx> storage(static_cast<std::size_t>(n) * n);
  std::vector<const cplx*> cols(n);
  for (int b = 0; b < n; ++b) {
    for (int a = 0; a < n; ++a) storage[b * n + a] = std::polar(1.0, k[a] * sorted[b]);
    cols[b] = storage.data() + b * n;
  }
  return slater(cols.data(), n);
}

}  // namespace

WavefnEvaluator::WavefnEvaluator(BetheState state, WavefnOptions options)
    : state_(std::move(state)), options_(options) {
  const int N = state_.params.N;
  if (static_cast<int>(state_.quasi_momenta.size()) != N)
    throw std::invalid_argument("WavefnEvaluator: state has wrong number of quasi-momenta");

  if (state_.regime == CouplingRegime::kFinite) {
    if (N > kMaxPermutationN)
      throw std::invalid_argument("WavefnEvaluator: permutation sum limited to N <= " +
                                  std::to_string(kMaxPermutationN));
    std::vector<int> p(N);
    std::iota(p.begin(), p.end(), 0);
    const auto& k = state_.quasi_momenta;
    const double c = state_.c_eff;
    do {
      perms_.insert(perms_.end(), p.begin(), p.end());
      const int sign = inversion_sign(p.data(), N);
      signs_.push_back(sign);
      cplx a(sign, 0.0);
      for (int j = 0; j < N; ++j)
        for (int l = j + 1; l < N; ++l) a *= cplx(c, k[p[l]] - k[p[j]]);
      amplitudes_.push_back(a);
    } while (std::next_permutation(p.begin(), p.end()));
  }

  std::vector<double> ref(N);
  for (int j = 0; j < N; ++j) ref[j] = (j + 0.5) * state_.params.L / N;
  scale_ = 1.0 / raw_bethe_part(ref);
}

void WavefnEvaluator::phase_column(double y, cplx* out) const {
  const auto& k = state_.quasi_momenta;
  for (std::size_t m = 0; m < k.size(); ++m) out[m] = std::polar(1.0, k[m] * y);
}

cplx WavefnEvaluator::raw_from_columns(const cplx* const* cols) const {
  const int N = state_.params.N;
  switch (state_.regime) {
    case CouplingRegime::kFree:
      return {1.0, 0.0};
    case CouplingRegime::kHardcore:
      return slater(cols, N);
    case CouplingRegime::kFinite:
      break;
  }
  cplx sum(0.0, 0.0);
  const std::size_t np = amplitudes_.size();
  const int* p = perms_.data();
  for (std::size_t q = 0; q < np; ++q, p += N) {
    cplx term = amplitudes_[q];
    for (int j = 0; j < N; ++j) term *= cols[j][p[j]];
    sum += term;
  }
  return sum;
}

cplx WavefnEvaluator::raw_bethe_part(std::span<const double> y) const {
  const int N = state_.params.N;
  if (state_.regime == CouplingRegime::kFree) return {1.0, 0.0};
  std::array<cplx, kMaxPermutationN * kMaxPermutationN> fixed;
  std::array<const cplx*, kMaxPermutationN> fixed_cols;
  std::vector<cplx> heap;
  std::vector<const cplx*> heap_cols;
  cplx* storage = fixed.data();
  const cplx** cols = fixed_cols.data();
  if (N > kMaxPermutationN) {
    heap.resize(static_cast<std::size_t>(N) * N);
    heap_cols.resize(N);
    storage = heap.data();
    cols = heap_cols.data();
  }
  for (int j = 0; j < N; ++j) {
    phase_column(y[j], storage + j * N);
    cols[j] = storage + j * N;
  }
  return raw_from_columns(cols);
}

cplx WavefnEvaluator::bethe_part_columns(const cplx* const* cols) const {
  return scale_ * raw_from_columns(cols);
}

cplx WavefnEvaluator::bethe_part(std::span<const double> sorted) const {
  return scale_ * raw_bethe_part(sorted);
}

cplx WavefnEvaluator::operator()(std::span<const double> x) const {
  const int N = state_.params.N;
  if (static_cast<int>(x.size()) != N)
    throw std::invalid_argument("eval_psi: expected N coordinates");
  const double L = state_.params.L;
  std::array<double, kMaxPermutationN> buf;
  std::vector<double> heap;
  double* y = buf.data();
  if (N > kMaxPermutationN) {
    heap.resize(N);
    y = heap.data();
  }
  for (int i = 0; i < N; ++i) {
    if (!(x[i] >= 0.0 && x[i] <= L))
      throw std::invalid_argument("eval_psi: coordinate outside [0, L]");
    y[i] = x[i];
  }
  std::sort(y, y + N);
  return anyonic_phase(x, phase_kappa()) * scale_ * raw_bethe_part(std::span<const double>(y, N));
}

cplx eval_psi_hardcore(const ModelParams& params, std::span<const double> x) {
  params.validate();
  const auto sector = sort_to_sector(x, params.L);
  const auto n = ground_state_quantum_numbers(params.N);
  std::vector<double> k(n.size());
  for (std::size_t j = 0; j < n.size(); ++j) k[j] = 2.0 * std::numbers::pi * n[j] / params.L;
  return anyonic_phase(x, params.kappa) * slater_determinant(k, sector.sorted_coords);
}

double exchange_residual(const WavefnEvaluator& ev, std::span<const double> x, int i, int j) {
  if (!(i < j) || i < 0 || j >= static_cast<int>(x.size()))
    throw std::invalid_argument("exchange_residual: need 0 <= i < j < N");
  const cplx psi = ev(x);
  if (std::abs(psi) < 1e-14) throw DegeneratePointError("exchange_residual: |psi| < 1e-14");
  std::vector<double> swapped(x.begin(), x.end());
  std::swap(swapped[i], swapped[j]);
  const cplx psi_s = ev(swapped);
  const double theta = exchange_angle(x, i, j, ev.kappa());
  return std::abs(psi - std::polar(1.0, -theta) * psi_s) / std::abs(psi);
}

}  // namespace anyon
