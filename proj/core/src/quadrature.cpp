#include "nodal/quadrature.hpp"

#include <cmath>

#include "nodal/errors.hpp"
#include "nodal/legendre.hpp"
#include "nodal/sphere.hpp"

namespace nodal {

GaussLegendreRule gauss_legendre(int n) {
  if (n < 1) throw InvalidArgument("Gauss-Legendre rule needs n >= 1");
  GaussLegendreRule rule;
  rule.nodes = legendre_roots(n);
  rule.weights.reserve(rule.nodes.size());
  for (double x : rule.nodes) {
    const double dp = legendre_p_with_derivative(n, x).second;
    rule.weights.push_back(2.0 / ((1.0 - x * x) * dp * dp));
  }
  return rule;
}

SphereQuadrature product_quadrature(int sphere_dim, int degree) {
  if (degree < 0) throw InvalidArgument("quadrature degree must be non-negative");
  SphereQuadrature q;
  q.sphere_dim = sphere_dim;
  const int n_phi = degree + 1;
  const double dphi = 2.0 * kPi / n_phi;
  if (sphere_dim == 1) {
    for (int j = 0; j < n_phi; ++j) {
      q.points.emplace_back(std::cos(j * dphi), std::sin(j * dphi), 0.0);
      q.weights.push_back(dphi);
    }
    return q;
  }
  if (sphere_dim != 2) throw InvalidArgument("sphere_dim must be 1 or 2");
  const auto gl = gauss_legendre(degree / 2 + 1);
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    const double z = gl.nodes[i];
    const double s = std::sqrt(1.0 - z * z);
    for (int j = 0; j < n_phi; ++j) {
      q.points.emplace_back(s * std::cos(j * dphi), s * std::sin(j * dphi), z);
      q.weights.push_back(gl.weights[i] * dphi);
    }
  }
  return q;
}

}  // namespace nodal
