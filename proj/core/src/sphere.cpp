#include "nodal/sphere.hpp"

#include <Eigen/Geometry>
#include <Eigen/QR>

#include <string>

#include "nodal/errors.hpp"

namespace nodal {

namespace {

void require_unit(double norm) {
  if (!(std::abs(norm - 1.0) <= kUnitTolerance)) {
    throw InvalidArgument("point is not on the unit sphere (norm " + std::to_string(norm) + ")");
  }
}

}  // namespace

SpherePoint::SpherePoint(const Eigen::Vector3d& xyz, int dim) : x_(xyz), dim_(dim) {}

SpherePoint::SpherePoint(const Eigen::Vector2d& xy) : x_(xy.x(), xy.y(), 0.0), dim_(1) {
  require_unit(xy.norm());
}

SpherePoint::SpherePoint(const Eigen::Vector3d& xyz) : x_(xyz), dim_(2) {
  require_unit(xyz.norm());
}

SpherePoint SpherePoint::on_circle(double theta) {
  return SpherePoint(Eigen::Vector3d(std::cos(theta), std::sin(theta), 0.0), 1);
}

SpherePoint SpherePoint::from_coords(std::span<const double> coords) {
  if (coords.size() == 2) return SpherePoint(Eigen::Vector2d(coords[0], coords[1]));
  if (coords.size() == 3) return SpherePoint(Eigen::Vector3d(coords[0], coords[1], coords[2]));
  throw InvalidArgument("sphere points need 2 or 3 coordinates, got " + std::to_string(coords.size()));
}

std::pair<Eigen::Vector3d, Eigen::Vector3d> tangent_frame(const Eigen::Vector3d& x) {
  // Pick the coordinate axis least aligned with x.
  Eigen::Index k;
  x.cwiseAbs().minCoeff(&k);
  Eigen::Vector3d a = Eigen::Vector3d::Unit(k);
  Eigen::Vector3d e1 = (a - a.dot(x) * x).normalized();
  Eigen::Vector3d e2 = x.cross(e1);
  return {e1, e2};
}

Eigen::Vector3d exp_map(const Eigen::Vector3d& x, const Eigen::Vector3d& v) {
  const double r = v.norm();
  if (r == 0.0) return x;
  return std::cos(r) * x + (std::sin(r) / r) * v;
}

SpherePoint random_point(int sphere_dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  if (sphere_dim == 1) {
    Eigen::Vector2d v(gauss(rng), gauss(rng));
    return SpherePoint(Eigen::Vector2d(v.normalized()));
  }
  if (sphere_dim == 2) {
    Eigen::Vector3d v(gauss(rng), gauss(rng), gauss(rng));
    return SpherePoint(Eigen::Vector3d(v.normalized()));
  }
  throw InvalidArgument("sphere_dim must be 1 or 2");
}

Eigen::Matrix3d random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Eigen::Matrix3d g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g(i, j) = gauss(rng);
  Eigen::HouseholderQR<Eigen::Matrix3d> qr(g);
  Eigen::Matrix3d q = qr.householderQ();
  Eigen::Matrix3d r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < 3; ++j) {
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  }
  if (q.determinant() < 0) q.col(0) = -q.col(0);
  return q;
}

Eigen::Matrix3d axis_rotation(const Eigen::Vector3d& axis, double angle) {
  return Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
}

}  // namespace nodal
