#pragma once

#include <random>

#include <Eigen/Core>

#include "nodal/harmonics.hpp"
#include "nodal/sphere.hpp"

namespace nodal {

// Numeric facts about the map f = (f_1, ..., f_N): M -> R^N.
struct EmbeddingReport {
  int sphere_dim = 2;
  int degree = 1;
  int dimension = 0;
  double eigenvalue = 0.0;
  double radius = 0.0;    // sqrt(N / vol M)
  double dilation = 0.0;  // lambda N / (n vol M)
  int covering_degree = 1;
  bool antipodal_identified = false;
  int quadrature_depth = 0;
  double numeric_integral = 0.0;        // integral over M of sqrt(det pullback Gram)
  double numeric_image_volume = 0.0;    // numeric_integral / covering_degree
  double predicted_image_volume = 0.0;  // dilation^(n/2) vol M / covering_degree
  double max_gram_residual = 0.0;       // max |Gram - dilation I| over quadrature nodes
  double max_radius_residual = 0.0;     // max |sum f_i^2 - N/vol M| over quadrature nodes
};

// lambda N / (n vol M).
double dilation_constant(const HarmonicBasis& basis);

// max over num_points uniform points of |sum_i f_i(x)^2 - N / vol M|.
double radius_check(const HarmonicBasis& basis, int num_points, std::mt19937_64& rng);

// n x n Gram matrix of df in an orthonormal tangent frame at `point`.
Eigen::MatrixXd pullback_gram(const HarmonicBasis& basis, const SpherePoint& point);

// max-norm of pullback_gram - dilation_constant * I.
double dilation_check(const HarmonicBasis& basis, const SpherePoint& point);

// Degree of the covering M -> f(M), found by probing fibers. On S^2 the only
// possible identification is x ~ -x, so the answer is 2 exactly when the
// probes see f(-x) = f(x). On S^1 the fiber of each probe is counted
// directly by a dense scan. Throws UnexpectedFiber when the probes find a
// fiber inconsistent with this.
int covering_degree(const HarmonicBasis& basis, int probes, std::mt19937_64& rng);

// Whether f(-x) = f(x) at every probe.
bool antipodally_identified(const HarmonicBasis& basis, int probes, std::mt19937_64& rng);

// Default icosphere depth (S^2) / refinement level (S^1) for image_volume.
inline constexpr int kDefaultQuadratureDepth = 4;

// Integrates the pullback volume density over M with the icosphere midpoint
// rule (exact spherical triangle areas) on S^2, or the midpoint rule on
// 64 * 2^depth arcs on S^1, and fills every EmbeddingReport field.
EmbeddingReport image_volume(const HarmonicBasis& basis, int quadrature_depth = kDefaultQuadratureDepth,
                             std::uint64_t seed = 1);

}  // namespace nodal
