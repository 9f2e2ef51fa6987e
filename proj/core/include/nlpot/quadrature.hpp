#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace nlpot::quadrature {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point rule; nodes by Newton iteration on P_n.  Cached per n.
const Rule& gauss_legendre(int n);

/// Composite Gauss-Legendre over [a, b] with ceil(b - a) panels of
/// `nodes_per_panel` points each (one panel per unit length).
template <typename F>
auto integrate(F&& f, double a, double b, int nodes_per_panel = 64) {
  const Rule& rule = gauss_legendre(nodes_per_panel);
  const int panels = std::max(1, static_cast<int>(std::ceil(std::abs(b - a))));
  const double width = (b - a) / panels;
  using Value = decltype(f(a));
  Value sum{};
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    const double mid = lo + 0.5 * width;
    Value panel{};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      panel += rule.weights[i] * f(mid + 0.5 * width * rule.nodes[i]);
    sum += 0.5 * width * panel;
  }
  return sum;
}

}  // namespace nlpot::quadrature
