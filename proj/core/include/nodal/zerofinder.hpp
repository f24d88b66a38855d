#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "nodal/harmonics.hpp"
#include "nodal/sphere.hpp"

namespace nodal {

struct SolverConfig {
  // Icosphere subdivision depth; 0 selects default_depth(max degree).
  int depth = 0;
  double newton_tolerance = 1e-12;
  int max_iterations = 30;
  // Geodesic radius below which two converged points are the same zero.
  double dedup_radius = 1e-6;
};

// max(4, ceil(log2 m) + 3): triangles several times smaller than the
// nodal feature scale pi/m.
int default_depth(int max_degree);

// n eigenfunctions u_1..u_n on S^n, row i expressed in its own basis.
// Rows of equal degree share an eigenspace; rows of distinct degree live in
// orthogonal eigenspaces, so the full-rank test runs on the direct sum.
class SubspaceSample {
 public:
  // Throws RankDeficient when the smallest singular value of the stacked
  // rows is <= 1e-8 times the largest; InvalidArgument on shape errors.
  SubspaceSample(std::vector<HarmonicBasis> bases, std::vector<CoefficientVector> rows);

  int size() const { return static_cast<int>(rows_.size()); }
  int sphere_dim() const { return bases_.front().sphere_dim(); }
  const HarmonicBasis& basis(int i) const { return bases_[static_cast<std::size_t>(i)]; }
  const CoefficientVector& row(int i) const { return rows_[static_cast<std::size_t>(i)]; }
  std::vector<int> source_degrees() const;
  int max_degree() const;
  // 2 m_1 ... m_n.
  std::int64_t bezout_bound() const;

  // max_i |u_i(x)|.
  double max_abs_value(const Eigen::Vector3d& x) const;
  // ||c_i|| sqrt(lambda_i N_i / vol M): the Lipschitz constant of u_i and
  // the magnitude scale for residual tests.
  double scale(int i) const;

 private:
  std::vector<HarmonicBasis> bases_;
  std::vector<CoefficientVector> rows_;
};

enum class ZeroStatus { Complete, DepthEscalated, Degenerate };

std::string_view to_string(ZeroStatus status);

struct ZeroFindingResult {
  // Sorted lexicographically; empty when Degenerate.
  std::vector<SpherePoint> zeros;
  ZeroStatus status = ZeroStatus::Complete;
  double max_residual = 0.0;
  std::int64_t bezout_bound = 0;
  int depth = 0;
  // Zero counts at each depth that was solved, in order.
  std::vector<int> counts_per_depth;
};

// Common zeros of two eigenfunctions on S^2 by icosphere bracketing and
// tangent-plane Newton; see README for the pipeline.
ZeroFindingResult find_common_zeros_s2(const SubspaceSample& sample, const SolverConfig& config = {});

// Closed-form zeros of a cos(m theta) + b sin(m theta); always 2m of them.
ZeroFindingResult find_common_zeros_s1(const SubspaceSample& sample);

// Dispatches on the sample's sphere dimension.
ZeroFindingResult find_common_zeros(const SubspaceSample& sample, const SolverConfig& config = {});

// #zeros <= bezout_bound. Throws DegenerateInput for Degenerate results.
bool verify_bezout(const ZeroFindingResult& result);

struct CircleRestriction {
  // Angles t in [0, 2 pi) with u(cos t e1 + sin t e2) = 0, ascending.
  std::vector<double> roots;
  int count() const { return static_cast<int>(roots.size()); }
};

// Restricts u to the great circle spanned by the orthonormal pair (e1, e2)
// and finds its roots by sign scanning at samples_per_degree * m points plus
// bisection. Throws DegenerateInput when the restriction vanishes
// identically, InvalidArgument for a non-orthonormal frame.
CircleRestriction restrict_to_great_circle(const HarmonicBasis& basis, const CoefficientVector& coeffs,
                                           const Eigen::Vector3d& e1, const Eigen::Vector3d& e2,
                                           int samples_per_degree = 32);

}  // namespace nodal
