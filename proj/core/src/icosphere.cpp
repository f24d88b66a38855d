#include "nodal/icosphere.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <unordered_map>

#include "nodal/errors.hpp"
#include "nodal/sphere.hpp"

namespace nodal {

namespace {

void base_icosahedron(Icosphere& mesh) {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  const double raw[12][3] = {{-1, t, 0}, {1, t, 0},  {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
                             {0, -1, -t}, {0, 1, -t}, {t, 0, -1},  {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1}};
  for (const auto& v : raw) mesh.vertices.push_back(Eigen::Vector3d(v[0], v[1], v[2]).normalized());
  mesh.faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
                {11, 10, 2}, {10, 7, 6}, {7, 1, 8},   {3, 9, 4},  {3, 4, 2},   {3, 2, 6}, {3, 6, 8},
                {3, 8, 9},  {4, 9, 5},  {2, 4, 11},  {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
}

void subdivide(Icosphere& mesh) {
  std::unordered_map<std::uint64_t, int> midpoints;
  midpoints.reserve(mesh.faces.size() * 2);
  auto midpoint = [&](int a, int b) {
    const auto lo = static_cast<std::uint64_t>(std::min(a, b));
    const auto hi = static_cast<std::uint64_t>(std::max(a, b));
    const std::uint64_t key = (lo << 32) | hi;
    auto it = midpoints.find(key);
    if (it != midpoints.end()) return it->second;
    const int idx = static_cast<int>(mesh.vertices.size());
    mesh.vertices.push_back((mesh.vertices[static_cast<std::size_t>(a)] + mesh.vertices[static_cast<std::size_t>(b)]).normalized());
    midpoints.emplace(key, idx);
    return idx;
  };
  std::vector<std::array<int, 3>> next;
  next.reserve(mesh.faces.size() * 4);
  for (const auto& f : mesh.faces) {
    const int ab = midpoint(f[0], f[1]);
    const int bc = midpoint(f[1], f[2]);
    const int ca = midpoint(f[2], f[0]);
    next.push_back({f[0], ab, ca});
    next.push_back({f[1], bc, ab});
    next.push_back({f[2], ca, bc});
    next.push_back({ab, bc, ca});
  }
  mesh.faces = std::move(next);
}

}  // namespace

double spherical_triangle_area(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c) {
  const double triple = std::abs(a.dot(b.cross(c)));
  const double denom = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
  return 2.0 * std::atan2(triple, denom);
}

Icosphere build_icosphere(int depth) {
  if (depth < 0 || depth > kMaxIcosphereDepth) {
    throw InvalidArgument("icosphere depth must be in [0, " + std::to_string(kMaxIcosphereDepth) + "], got " +
                          std::to_string(depth));
  }
  Icosphere mesh;
  mesh.depth = depth;
  base_icosahedron(mesh);
  for (int d = 0; d < depth; ++d) subdivide(mesh);

  const std::size_t nf = mesh.faces.size();
  mesh.centroids.resize(nf);
  mesh.circumradius.resize(nf);
  mesh.area.resize(nf);
  for (std::size_t i = 0; i < nf; ++i) {
    const auto& f = mesh.faces[i];
    const Eigen::Vector3d& a = mesh.vertices[static_cast<std::size_t>(f[0])];
    const Eigen::Vector3d& b = mesh.vertices[static_cast<std::size_t>(f[1])];
    const Eigen::Vector3d& c = mesh.vertices[static_cast<std::size_t>(f[2])];
    const Eigen::Vector3d g = (a + b + c).normalized();
    mesh.centroids[i] = g;
    // Spherical circumcenter: the pole of the plane through a, b, c. Every
    // point of an acute geodesic triangle lies within the circumradius of
    // some vertex.
    Eigen::Vector3d cc = (b - a).cross(c - a).normalized();
    if (cc.dot(g) < 0) cc = -cc;
    const double r = std::max({geodesic_distance(cc, a), geodesic_distance(cc, b), geodesic_distance(cc, c)});
    mesh.circumradius[i] = r;
    mesh.area[i] = spherical_triangle_area(a, b, c);
    mesh.max_edge = std::max({mesh.max_edge, geodesic_distance(a, b), geodesic_distance(b, c), geodesic_distance(c, a)});
  }
  return mesh;
}

std::shared_ptr<const Icosphere> cached_icosphere(int depth) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const Icosphere>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[depth];
  if (!slot) slot = std::make_shared<const Icosphere>(build_icosphere(depth));
  return slot;
}

}  // namespace nodal
