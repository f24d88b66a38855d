#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <span>
#include <utility>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace nodal {

inline constexpr double kPi = std::numbers::pi;

// A point on the unit sphere S^n, n in {1, 2}.
//
// Storage is always an ambient 3-vector; for S^1 the third component is zero
// and coords() exposes only the first two. Construction validates unit
// length to 1e-12.
class SpherePoint {
 public:
  static SpherePoint on_circle(double theta);
  static SpherePoint from_coords(std::span<const double> coords);

  explicit SpherePoint(const Eigen::Vector2d& xy);
  explicit SpherePoint(const Eigen::Vector3d& xyz);

  int sphere_dim() const { return dim_; }
  std::span<const double> coords() const { return {x_.data(), static_cast<std::size_t>(dim_ + 1)}; }
  const Eigen::Vector3d& ambient() const { return x_; }

  // Angle for S^1 points, atan2(y, x).
  double angle() const { return std::atan2(x_.y(), x_.x()); }

 private:
  SpherePoint(const Eigen::Vector3d& xyz, int dim);

  Eigen::Vector3d x_;
  int dim_;
};

// Tangent vectors share the padded ambient representation of SpherePoint.
using TangentVector = Eigen::Vector3d;

inline constexpr double kUnitTolerance = 1e-12;

// Geodesic distance on the unit sphere, robust near 0 and pi.
inline double geodesic_distance(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

// An orthonormal basis (e1, e2) of the tangent plane at unit x.
std::pair<Eigen::Vector3d, Eigen::Vector3d> tangent_frame(const Eigen::Vector3d& x);

// Exponential map at x applied to tangent vector v.
Eigen::Vector3d exp_map(const Eigen::Vector3d& x, const Eigen::Vector3d& v);

// Uniform random point on S^n from normalized Gaussians.
SpherePoint random_point(int sphere_dim, std::mt19937_64& rng);

// Haar-random rotation of R^3 (QR of a Gaussian matrix with sign fix, det +1).
Eigen::Matrix3d random_rotation(std::mt19937_64& rng);

// Rotation by `angle` about unit `axis` (Rodrigues).
Eigen::Matrix3d axis_rotation(const Eigen::Vector3d& axis, double angle);

}  // namespace nodal
