#pragma once

#include <optional>
#include <vector>

namespace anyon {

/// Gauss-Legendre nodes and weights on [-1, 1], nodes ascending.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Newton iteration on the Legendre recurrence; accurate to ~1e-15 for
/// orders up to a few hundred.
GaussRule gauss_legendre(int order);

/// Composite Gauss-Legendre grid on [0, L].
struct QuadratureGrid {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> panel_boundaries;  // includes 0 and L
  int order = 0;
  double length = 0.0;

  std::size_t size() const { return nodes.size(); }
};

/// `panels` equal panels of `order` points each. Optional breakpoints in
/// (0, L) split the panels they fall into; the grid then has more than
/// panels*order nodes.
QuadratureGrid build_grid(int panels, int order, double length,
                          const std::optional<std::vector<double>>& breakpoints = std::nullopt);

/// Quadrature of ordered points a <= y_1 <= ... <= y_d <= b mapped from the
/// unit cube by collapsed (Duffy-type) coordinates. Point p occupies
/// coords[p*d .. p*d+d). Weights sum to (b-a)^d / d!.
struct SimplexRule {
  int dim = 0;
  std::vector<double> coords;
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
};

SimplexRule ordered_simplex_rule(int dim, int order);

}  // namespace anyon
