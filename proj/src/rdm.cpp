#include "anyon/rdm.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <utility>

namespace anyon {

std::string to_string(InnerScheme s) { return s == InnerScheme::kSector ? "sector" : "tensor"; }

InnerScheme inner_scheme_from_string(const std::string& s) {
  if (s == "sector") return InnerScheme::kSector;
  if (s == "tensor") return InnerScheme::kTensor;
  throw std::invalid_argument("unknown inner scheme '" + s + "' (expected sector|tensor)");
}

double RdmMatrix::weighted_trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) t += grid.weights[i] * values(i, i).real();
  return t;
}

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Shared read-only state for all entries of one matrix.
class InnerIntegrator {
 public:
  InnerIntegrator(const WavefnEvaluator& ev, const InnerSpec& spec)
      : ev_(ev), spec_(spec), n_(ev.particles()), m_(n_ - 1), len_(ev.length()) {
    if (spec.panels < 1) throw std::invalid_argument("inner panels must be >= 1");
    if (spec.order < 2) throw std::invalid_argument("inner order must be >= 2");
    if (spec.scheme == InnerScheme::kSector)
      for (int d = 0; d <= m_; ++d) rules_.push_back(ordered_simplex_rule(d, spec.order));
  }

  cplx entry(double x, double xp, int slot) const {
    if (slot < 0 || slot >= n_) throw std::invalid_argument("rdm_entry_raw: outer slot out of range");
    if (!(x >= 0.0 && x <= len_ && xp >= 0.0 && xp <= len_))
      throw std::invalid_argument("rdm_entry_raw: outer point outside [0, L]");
    return spec_.scheme == InnerScheme::kSector ? sector_entry(x, xp, slot)
                                                : tensor_entry(x, xp, slot);
  }

 private:
  // Per-entry work arrays. Inner coordinates y arrive sorted; their phase
  // columns are shared by psi(x, y) and psi(x', y).
  struct Scratch {
    std::vector<double> a, b;         // argument tuples, outer point in `slot`
    std::vector<cplx> xcol, xpcol;    // phase columns of x and x'
    std::vector<cplx> ycols;          // m_ columns of N entries
    std::vector<const cplx*> ca, cb;  // sorted column pointers
  };

  cplx integrand(Scratch& s, const double* y, int slot) const {
    for (int i = 0, t = 0; i < n_; ++i) {
      if (i == slot) continue;
      s.a[i] = y[t];
      s.b[i] = y[t];
      ++t;
    }
    const double x = s.a[slot], xp = s.b[slot];
    if (ev_.free()) {
      return std::conj(anyonic_phase(s.a, ev_.phase_kappa())) * anyonic_phase(s.b, ev_.phase_kappa());
    }
    for (int t = 0; t < m_; ++t) ev_.phase_column(y[t], s.ycols.data() + t * n_);
    // merge the outer column into the sorted inner columns
    auto merge = [&](double xo, const cplx* xc, std::vector<const cplx*>& out) {
      int pos = 0;
      for (int t = 0; t < m_; ++t) {
        if (pos == t && xo < y[t]) out[pos++] = xc;
        out[pos++] = s.ycols.data() + t * n_;
      }
      if (pos == m_) out[pos] = xc;
    };
    merge(x, s.xcol.data(), s.ca);
    merge(xp, s.xpcol.data(), s.cb);
    const cplx pa = anyonic_phase(s.a, ev_.phase_kappa()) * ev_.bethe_part_columns(s.ca.data());
    const cplx pb = anyonic_phase(s.b, ev_.phase_kappa()) * ev_.bethe_part_columns(s.cb.data());
    return std::conj(pa) * pb;
  }

  Scratch make_scratch(double x, double xp, int slot) const {
    Scratch s;
    s.a.assign(n_, 0.0);
    s.b.assign(n_, 0.0);
    s.a[slot] = x;
    s.b[slot] = xp;
    s.xcol.resize(n_);
    s.xpcol.resize(n_);
    ev_.phase_column(x, s.xcol.data());
    ev_.phase_column(xp, s.xpcol.data());
    s.ycols.resize(static_cast<std::size_t>(m_) * n_);
    s.ca.resize(n_);
    s.cb.resize(n_);
    return s;
  }

  std::vector<double> cuts(double x, double xp) const {
    std::vector<double> c;
    for (int p = 0; p <= spec_.panels; ++p) c.push_back(len_ * p / spec_.panels);
    for (double b : {x, xp})
      if (b > 0.0 && b < len_) c.push_back(b);
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    return c;
  }

  cplx sector_entry(double x, double xp, int slot) const {
    const auto c = cuts(x, xp);
    const int intervals = static_cast<int>(c.size()) - 1;
    Scratch s = make_scratch(x, xp, slot);
    std::vector<int> counts(intervals, 0);
    std::vector<double> y(std::max(m_, 1));
    cplx total(0.0, 0.0);

    // Sorted inner coordinates are distributed over the intervals in order;
    // each composition of m_ is a product of ordered simplices.
    auto process = [&]() {
      std::vector<int> active;
      for (int q = 0; q < intervals; ++q)
        if (counts[q] > 0) active.push_back(q);
      std::vector<std::size_t> idx(active.size(), 0);
      double scale = 1.0;
      for (int q : active) scale *= std::pow(c[q + 1] - c[q], counts[q]);
      while (true) {
        double w = scale;
        int t = 0;
        for (std::size_t a = 0; a < active.size(); ++a) {
          const int q = active[a];
          const SimplexRule& r = rules_[counts[q]];
          const double lo = c[q], width = c[q + 1] - c[q];
          w *= r.weights[idx[a]];
          for (int d = 0; d < counts[q]; ++d) y[t++] = lo + width * r.coords[idx[a] * r.dim + d];
        }
        total += w * integrand(s, y.data(), slot);
        std::size_t a = active.size();
        while (a > 0) {
          --a;
          if (++idx[a] < rules_[counts[active[a]]].size()) break;
          idx[a] = 0;
          if (a == 0) return;
        }
        if (active.empty()) return;
      }
    };

    auto compose = [&](auto&& self, int q, int remaining) -> void {
      if (q == intervals - 1) {
        counts[q] = remaining;
        process();
        return;
      }
      for (int k = 0; k <= remaining; ++k) {
        counts[q] = k;
        self(self, q + 1, remaining - k);
      }
    };
    compose(compose, 0, m_);
    return factorial(m_) * total;
  }

  cplx tensor_entry(double x, double xp, int slot) const {
    std::vector<double> bps;
    for (double b : {x, xp})
      if (b > 0.0 && b < len_) bps.push_back(b);
    const QuadratureGrid g = build_grid(spec_.panels, spec_.order, len_, bps);
    const int G = static_cast<int>(g.size());
    Scratch s = make_scratch(x, xp, slot);
    std::vector<int> idx(m_, 0);
    std::vector<double> y(m_);
    const double mfact = factorial(m_);
    cplx total(0.0, 0.0);
    // Symmetric integrand: visit non-decreasing index tuples once with
    // multinomial multiplicity.
    while (true) {
      double w = 1.0, mult = mfact;
      int run = 1;
      for (int d = 0; d < m_; ++d) {
        w *= g.weights[idx[d]];
        y[d] = g.nodes[idx[d]];
        if (d > 0 && idx[d] == idx[d - 1]) {
          ++run;
          mult /= run;
        } else {
          run = 1;
        }
      }
      total += (w * mult) * integrand(s, y.data(), slot);
      int d = m_ - 1;
      while (d >= 0 && idx[d] == G - 1) --d;
      if (d < 0) break;
      ++idx[d];
      for (int e = d + 1; e < m_; ++e) idx[e] = idx[d];
    }
    return total;
  }

  const WavefnEvaluator& ev_;
  InnerSpec spec_;
  int n_, m_;
  double len_;
  std::vector<SimplexRule> rules_;
};

RdmMatrix finish(const WavefnEvaluator& ev, const QuadratureGrid& outer, Eigen::MatrixXcd values) {
  const Eigen::Index M = values.rows();
  for (Eigen::Index i = 0; i < M; ++i) {
    values(i, i) = cplx(values(i, i).real(), 0.0);
    for (Eigen::Index j = i + 1; j < M; ++j) values(j, i) = std::conj(values(i, j));
  }
  RdmMatrix r;
  r.params = ev.state().params;
  r.grid = outer;
  r.values = std::move(values);
  r.trace_raw = r.weighted_trace();
  if (!(r.trace_raw > 0.0) || !std::isfinite(r.trace_raw))
    throw IntegrationError("build_rdm: raw trace is not positive and finite");
  r.values /= r.trace_raw;
  return r;
}

std::vector<std::pair<int, int>> upper_triangle(int M) {
  std::vector<std::pair<int, int>> e;
  e.reserve(static_cast<std::size_t>(M) * (M + 1) / 2);
  for (int i = 0; i < M; ++i)
    for (int j = i; j < M; ++j) e.emplace_back(i, j);
  return e;
}

}  // namespace

cplx rdm_entry_raw(const WavefnEvaluator& ev, double x, double xp, const InnerSpec& inner,
                   int outer_slot) {
  return InnerIntegrator(ev, inner).entry(x, xp, outer_slot);
}

RdmMatrix build_rdm_serial(const WavefnEvaluator& ev, const QuadratureGrid& outer,
                           const InnerSpec& inner) {
  const InnerIntegrator integ(ev, inner);
  const int M = static_cast<int>(outer.size());
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(M, M);
  for (const auto& [i, j] : upper_triangle(M)) v(i, j) = integ.entry(outer.nodes[i], outer.nodes[j], 0);
  return finish(ev, outer, std::move(v));
}

RdmMatrix build_rdm(const WavefnEvaluator& ev, const QuadratureGrid& outer, const InnerSpec& inner) {
  const InnerIntegrator integ(ev, inner);
  const int M = static_cast<int>(outer.size());
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(M, M);
  const auto entries = upper_triangle(M);
  const long count = static_cast<long>(entries.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (long e = 0; e < count; ++e) {
    const auto [i, j] = entries[e];
    v(i, j) = integ.entry(outer.nodes[i], outer.nodes[j], 0);
  }
  return finish(ev, outer, std::move(v));
}

McEstimate mc_rdm_entry(const WavefnEvaluator& ev, double x, double xp, std::int64_t samples,
                        std::uint64_t seed) {
  if (samples < 1000) throw std::invalid_argument("mc_rdm_entry: need at least 1000 samples");
  const int n = ev.particles();
  const double L = ev.length();
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, L);
  std::vector<double> a(n), b(n);
  a[0] = x;
  b[0] = xp;
  // Welford on real and imaginary parts
  double mr = 0.0, mi = 0.0, sr = 0.0, si = 0.0;
  for (std::int64_t s = 1; s <= samples; ++s) {
    for (int i = 1; i < n; ++i) a[i] = b[i] = u(gen);
    const cplx f = std::conj(ev(a)) * ev(b);
    const double dr = f.real() - mr, di = f.imag() - mi;
    mr += dr / s;
    mi += di / s;
    sr += dr * (f.real() - mr);
    si += di * (f.imag() - mi);
  }
  const double vol = std::pow(L, n - 1);
  const double var = (sr + si) / static_cast<double>(samples - 1);
  return {vol * cplx(mr, mi), vol * std::sqrt(var / static_cast<double>(samples))};
}

void write_rdm_text(std::ostream& os, const RdmMatrix& rdm) {
  const auto old = os.precision(17);
  const std::size_t M = rdm.size();
  os << rdm.params.N << ' ' << rdm.params.L << ' ' << rdm.params.c << ' ' << rdm.params.kappa << ' '
     << M << '\n';
  for (std::size_t i = 0; i < M; ++i) os << rdm.grid.nodes[i] << ' ' << rdm.grid.weights[i] << '\n';
  for (std::size_t i = 0; i < M; ++i)
    for (std::size_t j = 0; j < M; ++j)
      os << rdm.values(i, j).real() << ' ' << rdm.values(i, j).imag() << '\n';
  os.precision(old);
}

RdmMatrix read_rdm_text(std::istream& is) {
  auto next = [&is]() {
    std::string tok;
    if (!(is >> tok)) throw std::invalid_argument("read_rdm_text: truncated input");
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0')
      throw std::invalid_argument("read_rdm_text: bad number '" + tok + "'");
    return v;
  };
  RdmMatrix r;
  r.params.N = static_cast<int>(next());
  r.params.L = next();
  r.params.c = next();
  r.params.kappa = next();
  const auto M = static_cast<std::size_t>(next());
  r.grid.length = r.params.L;
  for (std::size_t i = 0; i < M; ++i) {
    r.grid.nodes.push_back(next());
    r.grid.weights.push_back(next());
  }
  r.values.resize(M, M);
  for (std::size_t i = 0; i < M; ++i)
    for (std::size_t j = 0; j < M; ++j) {
      const double re = next();
      r.values(i, j) = cplx(re, next());
    }
  r.trace_raw = r.weighted_trace();
  return r;
}

}  // namespace anyon
