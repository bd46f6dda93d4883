#include "anyon/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace anyon {

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  for (int j = 2; j <= n; ++j) {
    const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
    p0 = p1;
    p1 = p2;
  }
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

GaussRule gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  const int n = order;
  GaussRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  if (n == 1) {
    rule.weights[0] = 2.0;
    return rule;
  }
  for (int i = 0; i < n / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(n, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) {
    const double dp = legendre(n, 0.0).second;
    rule.weights[n / 2] = 2.0 / (dp * dp);
  }
  return rule;
}

QuadratureGrid build_grid(int panels, int order, double length,
                          const std::optional<std::vector<double>>& breakpoints) {
  if (panels < 1) throw std::invalid_argument("build_grid: panels must be >= 1");
  if (order < 2) throw std::invalid_argument("build_grid: order must be >= 2");
  if (!(length > 0.0)) throw std::invalid_argument("build_grid: length must be > 0");

  std::vector<double> cuts;
  cuts.reserve(panels + 1);
  for (int p = 0; p <= panels; ++p) cuts.push_back(length * p / panels);
  if (breakpoints) {
    for (double b : *breakpoints) {
      if (!(b > 0.0 && b < length))
        throw std::invalid_argument("build_grid: breakpoint " + std::to_string(b) +
                                    " outside (0, L)");
      cuts.push_back(b);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  }

  const GaussRule gl = gauss_legendre(order);
  QuadratureGrid grid;
  grid.order = order;
  grid.length = length;
  grid.panel_boundaries = cuts;
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    const double half = 0.5 * (cuts[p + 1] - cuts[p]);
    const double mid = 0.5 * (cuts[p + 1] + cuts[p]);
    for (int q = 0; q < order; ++q) {
      grid.nodes.push_back(mid + half * gl.nodes[q]);
      grid.weights.push_back(half * gl.weights[q]);
    }
  }
  return grid;
}

SimplexRule ordered_simplex_rule(int dim, int order) {
  if (dim < 0) throw std::invalid_argument("ordered_simplex_rule: negative dimension");
  SimplexRule rule;
  rule.dim = dim;
  if (dim == 0) {
    rule.weights.push_back(1.0);
    return rule;
  }
  const GaussRule gl = gauss_legendre(order);
  std::vector<double> u(order), wu(order);
  for (int q = 0; q < order; ++q) {
    u[q] = 0.5 * (gl.nodes[q] + 1.0);
    wu[q] = 0.5 * gl.weights[q];
  }

  // y_1 = s_1, y_j = y_{j-1} + (1 - y_{j-1}) s_j; Jacobian prod_{j<d} (1 - y_j).
  std::size_t total = 1;
  for (int d = 0; d < dim; ++d) total *= static_cast<std::size_t>(order);
  rule.coords.resize(total * dim);
  rule.weights.resize(total);
  std::vector<int> idx(dim, 0);
  for (std::size_t p = 0; p < total; ++p) {
    double prev = 0.0, w = 1.0;
    for (int d = 0; d < dim; ++d) {
      const double gap = 1.0 - prev;
      const double y = prev + gap * u[idx[d]];
      w *= wu[idx[d]] * gap;
      rule.coords[p * dim + d] = y;
      prev = y;
    }
    rule.weights[p] = w;
    for (int d = dim - 1; d >= 0; --d) {
      if (++idx[d] < order) break;
      idx[d] = 0;
    }
  }
  return rule;
}

}  // namespace anyon
