#pragma once

#include <array>
#include <memory>
#include <vector>

#include <Eigen/Core>

namespace nodal {

// Geodesic icosphere: the icosahedron with each face split into 4^depth
// triangles, vertices projected onto the unit sphere.
struct Icosphere {
  int depth = 0;
  std::vector<Eigen::Vector3d> vertices;
  std::vector<std::array<int, 3>> faces;
  // Per face: normalized vertex mean, geodesic circumradius, exact area.
  std::vector<Eigen::Vector3d> centroids;
  std::vector<double> circumradius;
  std::vector<double> area;
  double max_edge = 0.0;
};

inline constexpr int kMaxIcosphereDepth = 11;

Icosphere build_icosphere(int depth);

// Process-wide cache; meshes are built once per depth.
std::shared_ptr<const Icosphere> cached_icosphere(int depth);

// Area of the geodesic triangle abc on the unit sphere.
double spherical_triangle_area(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c);

}  // namespace nodal
