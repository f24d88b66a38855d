#include "nodal/legendre.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nodal/errors.hpp"

namespace nodal {

double legendre_p(int m, double t) {
  return legendre_p_with_derivative(m, t).first;
}

std::pair<double, double> legendre_p_with_derivative(int m, double t) {
  if (m < 0) throw InvalidArgument("Legendre degree must be non-negative");
  if (m == 0) return {1.0, 0.0};
  double p_prev = 1.0;
  double p = t;
  for (int l = 2; l <= m; ++l) {
    const double next = ((2 * l - 1) * t * p - (l - 1) * p_prev) / l;
    p_prev = p;
    p = next;
  }
  double dp;
  if (std::abs(t) == 1.0) {
    // P_m'(+-1) = (+-1)^(m-1) m(m+1)/2
    dp = 0.5 * m * (m + 1) * ((m % 2 == 0 && t < 0) ? -1.0 : 1.0);
  } else {
    dp = m * (t * p - p_prev) / (t * t - 1.0);
  }
  return {p, dp};
}

std::vector<double> legendre_roots(int m) {
  if (m < 1) throw InvalidArgument("Legendre roots need degree >= 1");
  std::vector<double> roots(static_cast<std::size_t>(m));
  for (int k = 1; k <= m; ++k) {
    double x = std::cos(std::numbers::pi * (k - 0.25) / (m + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre_p_with_derivative(m, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    roots[static_cast<std::size_t>(k - 1)] = x;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace nodal
