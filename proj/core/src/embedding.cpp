#include "nodal/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "nodal/errors.hpp"
#include "nodal/icosphere.hpp"

namespace nodal {

namespace {

constexpr double kFiberTolerance = 1e-8;

Eigen::VectorXd image(const HarmonicBasis& basis, const Eigen::Vector3d& x) {
  Eigen::VectorXd v(basis.dimension());
  basis.evaluate(x, std::span<double>(v.data(), static_cast<std::size_t>(v.size())));
  return v;
}

Eigen::MatrixXd gram_at(const HarmonicBasis& basis, const Eigen::Vector3d& x, Eigen::VectorXd& values,
                        Eigen::Matrix3Xd& grads) {
  basis.evaluate(x, std::span<double>(values.data(), static_cast<std::size_t>(values.size())), grads);
  Eigen::MatrixXd frame;
  if (basis.sphere_dim() == 1) {
    frame.resize(3, 1);
    frame.col(0) = Eigen::Vector3d(-x.y(), x.x(), 0.0);
  } else {
    const auto [e1, e2] = tangent_frame(x);
    frame.resize(3, 2);
    frame.col(0) = e1;
    frame.col(1) = e2;
  }
  // Row a of `differential` holds the directional derivatives of f along e_a.
  const Eigen::MatrixXd differential = frame.transpose() * grads;
  return differential * differential.transpose();
}

// Number of theta' in [0, 2 pi) with f(theta') = f(theta) on S^1.
int circle_fiber_size(const HarmonicBasis& basis, double theta) {
  const Eigen::VectorXd target = image(basis, SpherePoint::on_circle(theta).ambient());
  const double tol = kFiberTolerance * std::sqrt(basis.squared_radius());
  auto dist = [&](double t) { return (image(basis, SpherePoint::on_circle(t).ambient()) - target).norm(); };
  const int grid = 64 * basis.degree();
  const double dt = 2.0 * kPi / grid;
  std::vector<double> d(static_cast<std::size_t>(grid));
  for (int j = 0; j < grid; ++j) d[static_cast<std::size_t>(j)] = dist(theta + j * dt);
  int fiber = 0;
  for (int j = 0; j < grid; ++j) {
    const double prev = d[static_cast<std::size_t>((j + grid - 1) % grid)];
    const double here = d[static_cast<std::size_t>(j)];
    const double next = d[static_cast<std::size_t>((j + 1) % grid)];
    if (!(here <= prev && here < next)) continue;
    // Golden-section refinement of the local minimum in [t - dt, t + dt].
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = theta + (j - 1) * dt, b = theta + (j + 1) * dt;
    double c = b - g * (b - a), e = a + g * (b - a);
    double fc = dist(c), fe = dist(e);
    for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
      if (fc < fe) {
        b = e;
        e = c;
        fe = fc;
        c = b - g * (b - a);
        fc = dist(c);
      } else {
        a = c;
        c = e;
        fc = fe;
        e = a + g * (b - a);
        fe = dist(e);
      }
    }
    if (std::min({fc, fe, here}) < tol) ++fiber;
  }
  return fiber;
}

}  // namespace

double dilation_constant(const HarmonicBasis& basis) {
  return basis.gradient_sum() / basis.sphere_dim();
}

double radius_check(const HarmonicBasis& basis, int num_points, std::mt19937_64& rng) {
  if (num_points < 1) throw InvalidArgument("radius_check needs at least one point");
  double worst = 0.0;
  for (int i = 0; i < num_points; ++i) {
    const SpherePoint p = random_point(basis.sphere_dim(), rng);
    worst = std::max(worst, std::abs(eval_basis(basis, p).squaredNorm() - basis.squared_radius()));
  }
  return worst;
}

Eigen::MatrixXd pullback_gram(const HarmonicBasis& basis, const SpherePoint& point) {
  if (point.sphere_dim() != basis.sphere_dim()) throw InvalidArgument("point and basis live on different spheres");
  Eigen::VectorXd values(basis.dimension());
  Eigen::Matrix3Xd grads(3, basis.dimension());
  return gram_at(basis, point.ambient(), values, grads);
}

double dilation_check(const HarmonicBasis& basis, const SpherePoint& point) {
  const Eigen::MatrixXd gram = pullback_gram(basis, point);
  const auto n = gram.rows();
  return (gram - dilation_constant(basis) * Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
}

bool antipodally_identified(const HarmonicBasis& basis, int probes, std::mt19937_64& rng) {
  if (probes < 1) throw InvalidArgument("need at least one probe");
  const double tol = kFiberTolerance * std::sqrt(basis.squared_radius());
  int identified = 0;
  for (int i = 0; i < probes; ++i) {
    const Eigen::Vector3d x = random_point(basis.sphere_dim(), rng).ambient();
    if ((image(basis, x) - image(basis, -x)).norm() < tol) ++identified;
  }
  if (identified != 0 && identified != probes) {
    throw UnexpectedFiber("antipodal identification holds at " + std::to_string(identified) + " of " +
                          std::to_string(probes) + " probes");
  }
  return identified == probes;
}

int covering_degree(const HarmonicBasis& basis, int probes, std::mt19937_64& rng) {
  if (probes < 1) throw InvalidArgument("need at least one probe");
  if (basis.sphere_dim() == 1) {
    int degree = 0;
    for (int i = 0; i < probes; ++i) {
      const int fiber = circle_fiber_size(basis, random_point(1, rng).angle());
      if (degree != 0 && fiber != degree) {
        throw UnexpectedFiber("fiber sizes " + std::to_string(degree) + " and " + std::to_string(fiber) +
                              " differ between probes");
      }
      degree = fiber;
    }
    return degree;
  }

  const bool antipodal = antipodally_identified(basis, probes, rng);
  // Any other coincidence between well-separated points would be a fiber
  // that parity cannot explain.
  const double tol = kFiberTolerance * std::sqrt(basis.squared_radius());
  for (int i = 0; i < probes; ++i) {
    const Eigen::Vector3d x = random_point(2, rng).ambient();
    const Eigen::Vector3d y = random_point(2, rng).ambient();
    if (geodesic_distance(x, y) <= 1e-3 || geodesic_distance(x, -y) <= 1e-3) continue;
    if ((image(basis, x) - image(basis, y)).norm() < tol) {
      throw UnexpectedFiber("non-antipodal points share an image");
    }
  }
  return antipodal ? 2 : 1;
}

EmbeddingReport image_volume(const HarmonicBasis& basis, int quadrature_depth, std::uint64_t seed) {
  if (quadrature_depth < 0 || quadrature_depth > kMaxIcosphereDepth) {
    throw InvalidArgument("quadrature depth must be in [0, " + std::to_string(kMaxIcosphereDepth) + "]");
  }
  EmbeddingReport r;
  r.sphere_dim = basis.sphere_dim();
  r.degree = basis.degree();
  r.dimension = basis.dimension();
  r.eigenvalue = basis.eigenvalue();
  r.radius = std::sqrt(basis.squared_radius());
  r.dilation = dilation_constant(basis);
  r.quadrature_depth = quadrature_depth;

  std::mt19937_64 rng(seed);
  r.covering_degree = covering_degree(basis, 64, rng);
  r.antipodal_identified = antipodally_identified(basis, 64, rng);

  Eigen::VectorXd values(basis.dimension());
  Eigen::Matrix3Xd grads(3, basis.dimension());
  auto accumulate = [&](const Eigen::Vector3d& x, double weight) {
    const Eigen::MatrixXd gram = gram_at(basis, x, values, grads);
    const auto n = gram.rows();
    r.max_gram_residual = std::max(
        r.max_gram_residual, (gram - r.dilation * Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff());
    r.max_radius_residual = std::max(r.max_radius_residual, std::abs(values.squaredNorm() - basis.squared_radius()));
    r.numeric_integral += weight * std::sqrt(std::max(0.0, gram.determinant()));
  };

  if (basis.sphere_dim() == 1) {
    const long arcs = 64L << quadrature_depth;
    const double h = 2.0 * kPi / static_cast<double>(arcs);
    for (long k = 0; k < arcs; ++k) accumulate(SpherePoint::on_circle((k + 0.5) * h).ambient(), h);
  } else {
    const auto mesh = cached_icosphere(quadrature_depth);
    for (std::size_t f = 0; f < mesh->faces.size(); ++f) accumulate(mesh->centroids[f], mesh->area[f]);
  }

  const int n = basis.sphere_dim();
  r.numeric_image_volume = r.numeric_integral / r.covering_degree;
  r.predicted_image_volume = std::pow(r.dilation, 0.5 * n) * basis.manifold_volume() / r.covering_degree;
  return r;
}

}  // namespace nodal
