#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "nodal/sphere.hpp"

namespace nodal {

// Coefficients of u = sum_i c_i f_i in a HarmonicBasis.
using CoefficientVector = Eigen::VectorXd;

// Orthonormal real eigenbasis of the Laplacian on S^1 or S^2 for the
// eigenvalue lambda = m(m + n - 1).
//
// Orthonormality is with respect to the unnormalized measure (arc length on
// S^1, surface area on S^2), so sum_i f_i(x)^2 = N / vol M.
//
// S^1: f_0 = cos(m theta)/sqrt(pi), f_1 = sin(m theta)/sqrt(pi).
// S^2: the 2m+1 real spherical harmonics of degree m, index i = m + k for
//      order k in [-m, m]; k > 0 are cosine-type, k < 0 sine-type, no
//      Condon-Shortley phase. Evaluation goes through the polynomial form
//      q_mk(z) * Re/Im (x + iy)^k with fully normalized associated-Legendre
//      recurrences, so there is no pole singularity and no factorials.
//
// Every quantity this library reports is invariant under O(N) changes of
// basis, so the particular sign and ordering convention does not leak.
// Immutable after construction and safe to share between threads.
class HarmonicBasis {
 public:
  int sphere_dim() const { return sphere_dim_; }
  int degree() const { return degree_; }
  int dimension() const { return dimension_; }
  double eigenvalue() const { return eigenvalue_; }
  double manifold_volume() const { return volume_; }

  // N / vol M, the squared radius of the image sphere.
  double squared_radius() const { return dimension_ / volume_; }
  // lambda N / vol M, the pointwise value of sum_i |grad f_i|^2.
  double gradient_sum() const { return eigenvalue_ * dimension_ / volume_; }

  // Raw evaluation at an ambient point assumed to lie on the sphere. No
  // validation; these are the inner-loop entry points.
  void evaluate(const Eigen::Vector3d& x, std::span<double> values) const;
  // `gradients` must already have dimension() columns.
  void evaluate(const Eigen::Vector3d& x, std::span<double> values, Eigen::Matrix3Xd& gradients) const;

  double value(const CoefficientVector& c, const Eigen::Vector3d& x) const;

  bool operator==(const HarmonicBasis& other) const {
    return sphere_dim_ == other.sphere_dim_ && degree_ == other.degree_;
  }

 private:
  friend HarmonicBasis build_basis(int sphere_dim, int degree);
  HarmonicBasis(int sphere_dim, int degree);

  void evaluate_circle(const Eigen::Vector3d& x, std::span<double> values, Eigen::Matrix3Xd* gradients) const;
  void evaluate_sphere(const Eigen::Vector3d& x, std::span<double> values, Eigen::Matrix3Xd* gradients) const;

  int sphere_dim_;
  int degree_;
  int dimension_;
  double eigenvalue_;
  double volume_;
};

inline constexpr int kMaxDegree = 50;

// Throws InvalidArgument for sphere_dim outside {1, 2}, degree < 1 or
// degree > kMaxDegree.
HarmonicBasis build_basis(int sphere_dim, int degree);

// (f_1(x), ..., f_N(x)).
Eigen::VectorXd eval_basis(const HarmonicBasis& basis, const SpherePoint& point);

// Intrinsic gradients of the basis functions, each tangent to the sphere at
// `point`. For S^1 the third component is zero.
std::vector<TangentVector> eval_gradient(const HarmonicBasis& basis, const SpherePoint& point);

// |Delta u(x) + lambda u(x)| with Delta from a second-order central stencil in
// geodesic normal coordinates at x.
double laplacian_residual(const HarmonicBasis& basis, const CoefficientVector& coeffs, const SpherePoint& point,
                          double step = 1e-4);

// Coefficients of the unit-norm zonal harmonic sqrt((2m+1)/4pi) P_m(<x, axis>).
// S^2 only.
CoefficientVector zonal(const HarmonicBasis& basis, const SpherePoint& axis);

// Gram matrix of the basis under a quadrature exact for degree 2m.
Eigen::MatrixXd gram_matrix(const HarmonicBasis& basis);

// Matrix D with u(Q^T x) = sum_i (D c)_i f_i(x), computed by projection onto
// the basis with an exact quadrature. For S^1, `rotation` must fix the z axis.
Eigen::MatrixXd rotation_representation(const HarmonicBasis& basis, const Eigen::Matrix3d& rotation);

// Throws InvalidArgument unless coeffs has basis.dimension() entries.
void check_coefficients(const HarmonicBasis& basis, const CoefficientVector& coeffs);

}  // namespace nodal
