#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "nodal/harmonics.hpp"
#include "nodal/zerofinder.hpp"

namespace nodal {

// sigma_k = 2 pi^((k+1)/2) / Gamma((k+1)/2), the volume of the unit S^k.
double sphere_surface_area(int k);

// Average number of common zeros of n Haar-random eigenfunctions of degree m
// on S^n: (2 / sigma_n) (lambda / n)^(n/2) vol S^n with lambda = m(m+n-1).
// Valid for any n >= 1.
double expected_zero_count(int sphere_dim, int degree);

// Conjectured mixed-degree average 2 sqrt(lambda_1 ... lambda_n) vol S^n /
// (sigma_n n^(n/2)). Experimental, not an established result.
double conjectured_zero_count(int sphere_dim, const std::vector<int>& degrees);

// Independent random stream for trial `index` of a run seeded with `seed`.
std::mt19937_64 trial_stream(std::uint64_t seed, std::uint64_t index);

// Rows are independent standard Gaussian vectors, one per basis. For equal
// bases the spanned subspace is Haar-distributed on the Grassmannian.
// Rank-deficient draws are redrawn from the same stream.
SubspaceSample sample_subspace(const std::vector<HarmonicBasis>& bases, std::mt19937_64& rng);

struct AverageReport {
  int sphere_dim = 2;
  std::vector<int> degrees;
  int trials = 0;
  std::map<int, int> histogram;  // #Z -> number of trials
  double mean = 0.0;
  double standard_error = 0.0;
  double theory = 0.0;
  double relative_deviation = 0.0;  // |mean - theory| / theory
  int degenerate_resamples = 0;
  int depth_escalations = 0;
  int bezout_violations = 0;
  double max_residual = 0.0;
  std::uint64_t seed = 0;
  bool experimental = false;
};

// Monte Carlo estimate of the average zero count over `trials` random
// subspaces. All bases must share one degree. Degenerate trials are redrawn
// and tallied, never counted.
AverageReport average_zero_count(const std::vector<HarmonicBasis>& bases, int trials, const SolverConfig& config,
                                 std::uint64_t seed);

// Same pipeline with per-row degrees on S^2; theory holds the conjectured
// value and the report is flagged experimental.
AverageReport conjecture_mixed_average(const std::vector<HarmonicBasis>& bases, int trials,
                                       const SolverConfig& config, std::uint64_t seed);

struct LengthReport {
  int trials = 0;
  double mean_count = 0.0;
  double count_standard_error = 0.0;
  double length = 0.0;  // pi * mean_count
  double standard_error = 0.0;
  std::optional<double> reference;
  int degenerate_resamples = 0;
  std::uint64_t seed = 0;
};

// Haar-random great circle: Gram-Schmidt on two Gaussian vectors.
std::pair<Eigen::Vector3d, Eigen::Vector3d> random_great_circle(std::mt19937_64& rng);

// Nodal length of u on the unit S^2 from its mean intersection count with
// random great circles: E #(nodal set & circle) = length / pi.
// `rotation` is applied to the evaluation point, u(R^T x).
LengthReport crofton_length(const HarmonicBasis& basis, const CoefficientVector& coeffs, int trials,
                            std::uint64_t seed, const Eigen::Matrix3d& rotation = Eigen::Matrix3d::Identity());

// Crofton estimate of the mean nodal length of a random degree-m
// eigenfunction: each trial draws a fresh Gaussian u and a fresh circle.
LengthReport random_nodal_length(const HarmonicBasis& basis, int trials, std::uint64_t seed);

// Total length of the nodal circles of the zonal harmonic of degree m:
// sum_k 2 pi sin(theta_k) over the colatitudes of the Legendre roots.
double zonal_nodal_length(int degree);

// Largest tilt for which the zonal pair is guaranteed exactly 2m common
// zeros: a quarter of the smallest gap between consecutive nodal colatitudes,
// the poles included as end points.
double zonal_alpha_max(int degree);

// Zonal v_m about the north pole and about an axis tilted by alpha in the
// xz-plane. alpha = 0 gives coincident nodal sets and a Degenerate result.
// Throws InvalidArgument unless 0 <= alpha < zonal_alpha_max(m).
ZeroFindingResult zonal_pair_demo(int degree, double alpha, const SolverConfig& config = {});

}  // namespace nodal
