#pragma once

#include <vector>

#include <Eigen/Core>

namespace nodal {

struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [-1, 1]; exact for polynomials of degree 2n-1.
GaussLegendreRule gauss_legendre(int n);

// Weighted point set on S^1 or S^2 integrating against the unnormalized
// arc-length / surface measure.
struct SphereQuadrature {
  int sphere_dim = 2;
  std::vector<Eigen::Vector3d> points;
  std::vector<double> weights;
};

// Gauss-Legendre in z times the trapezoid rule in azimuth on S^2, or the
// trapezoid rule on S^1. Exact for polynomial (trigonometric) integrands of
// total degree <= `degree`.
SphereQuadrature product_quadrature(int sphere_dim, int degree);

}  // namespace nodal
