#include "nodal/zerofinder.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <tuple>

#include <Eigen/Dense>

#include "nodal/errors.hpp"
#include "nodal/icosphere.hpp"

namespace nodal {

namespace {

constexpr double kRankTolerance = 1e-8;
constexpr double kResidualTolerance = 1e-9;
// Newton iterates may wander at most this many longest-edges from the start
// triangle's centroid (roughly its 2-ring).
constexpr double kNeighborhoodEdges = 2.5;
// Tables of basis values at mesh vertices are cached up to this many doubles.
constexpr double kTableBudget = 4e7;

// Basis values at every mesh vertex, one column per vertex.
std::shared_ptr<const Eigen::MatrixXd> vertex_table(const HarmonicBasis& basis, const Icosphere& mesh) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const Eigen::MatrixXd>> cache;
  const double size = static_cast<double>(basis.dimension()) * static_cast<double>(mesh.vertices.size());
  const bool cacheable = size <= kTableBudget;
  const auto key = std::make_pair(basis.degree(), mesh.depth);
  if (cacheable) {
    std::lock_guard lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto table = std::make_shared<Eigen::MatrixXd>(basis.dimension(), static_cast<Eigen::Index>(mesh.vertices.size()));
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
    basis.evaluate(mesh.vertices[v],
                   std::span<double>(table->col(static_cast<Eigen::Index>(v)).data(),
                                     static_cast<std::size_t>(basis.dimension())));
  }
  std::shared_ptr<const Eigen::MatrixXd> result = std::move(table);
  if (cacheable) {
    std::lock_guard lock(mutex);
    cache.emplace(key, result);
  }
  return result;
}

bool lex_less(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  return std::tie(a.x(), a.y(), a.z()) < std::tie(b.x(), b.y(), b.z());
}

// Greedy canonical dedup. Returns false once more than `limit` distinct
// points have been accepted.
bool dedup(std::vector<Eigen::Vector3d> points, double radius, std::size_t limit, std::vector<Eigen::Vector3d>& out) {
  std::sort(points.begin(), points.end(), lex_less);
  out.clear();
  for (const auto& p : points) {
    const bool seen = std::any_of(out.begin(), out.end(),
                                  [&](const Eigen::Vector3d& q) { return geodesic_distance(p, q) <= radius; });
    if (seen) continue;
    out.push_back(p);
    if (out.size() > limit) return false;
  }
  return true;
}

class NewtonSolver {
 public:
  NewtonSolver(const SubspaceSample& sample, const SolverConfig& config) : sample_(sample), config_(config) {
    for (int i = 0; i < 2; ++i) {
      values_[static_cast<std::size_t>(i)].resize(sample.basis(i).dimension());
      grads_[static_cast<std::size_t>(i)].resize(3, sample.basis(i).dimension());
      scale_[static_cast<std::size_t>(i)] = sample.scale(i);
    }
  }

  // Newton from `start`; on success writes the zero and its residual.
  bool solve(const Eigen::Vector3d& start, double max_distance, Eigen::Vector3d& zero, double& residual) {
    Eigen::Vector3d x = start;
    for (int it = 0; it < config_.max_iterations; ++it) {
      Eigen::Vector2d u;
      std::array<Eigen::Vector3d, 2> g;
      evaluate(x, u, g);
      const auto [e1, e2] = tangent_frame(x);
      Eigen::Matrix2d jac;
      jac << g[0].dot(e1), g[0].dot(e2), g[1].dot(e1), g[1].dot(e2);
      const Eigen::Vector2d step = newton_step(jac, u);
      if (!step.allFinite()) return false;
      x = (x + step.x() * e1 + step.y() * e2).normalized();
      if (geodesic_distance(x, start) > max_distance) return false;
      if (step.norm() < config_.newton_tolerance) {
        evaluate(x, u, g);
        residual = std::max(std::abs(u.x()) / scale_[0], std::abs(u.y()) / scale_[1]);
        if (residual > kResidualTolerance) return false;
        residual = std::max(std::abs(u.x()), std::abs(u.y()));
        zero = x;
        return true;
      }
    }
    return false;
  }

 private:
  void evaluate(const Eigen::Vector3d& x, Eigen::Vector2d& u, std::array<Eigen::Vector3d, 2>& g) {
    for (int i = 0; i < 2; ++i) {
      const auto k = static_cast<std::size_t>(i);
      auto& vals = values_[k];
      sample_.basis(i).evaluate(x, std::span<double>(vals.data(), static_cast<std::size_t>(vals.size())), grads_[k]);
      u[i] = sample_.row(i).dot(vals);
      g[k] = grads_[k] * sample_.row(i);
    }
  }

  static Eigen::Vector2d newton_step(const Eigen::Matrix2d& jac, const Eigen::Vector2d& u) {
    const double det = jac.determinant();
    if (std::abs(det) > 1e-10 * jac.squaredNorm()) {
      return -jac.inverse() * u;
    }
    // Singular Jacobian (tangent or coincident nodal lines): minimum-norm
    // Gauss-Newton step.
    Eigen::JacobiSVD<Eigen::Matrix2d> svd(jac, Eigen::ComputeFullU | Eigen::ComputeFullV);
    svd.setThreshold(1e-10);
    return -svd.solve(u);
  }

  const SubspaceSample& sample_;
  const SolverConfig& config_;
  std::array<Eigen::VectorXd, 2> values_;
  std::array<Eigen::Matrix3Xd, 2> grads_;
  std::array<double, 2> scale_{};
};

struct DepthOutcome {
  std::vector<Eigen::Vector3d> zeros;
  double max_residual = 0.0;
  bool degenerate = false;
};

DepthOutcome solve_at_depth(const SubspaceSample& sample, const SolverConfig& config, int depth) {
  const auto mesh = cached_icosphere(depth);
  const std::size_t nv = mesh->vertices.size();

  // u_i at every vertex.
  std::array<Eigen::VectorXd, 2> at_vertex;
  std::array<double, 2> lipschitz{};
  for (int i = 0; i < 2; ++i) {
    const auto table = vertex_table(sample.basis(i), *mesh);
    at_vertex[static_cast<std::size_t>(i)] = table->transpose() * sample.row(i);
    lipschitz[static_cast<std::size_t>(i)] = sample.scale(i);
  }

  NewtonSolver newton(sample, config);
  const double max_distance = kNeighborhoodEdges * mesh->max_edge;
  std::vector<Eigen::Vector3d> converged;
  DepthOutcome out;
  for (std::size_t f = 0; f < mesh->faces.size(); ++f) {
    const auto& face = mesh->faces[f];
    bool candidate = true;
    for (std::size_t i = 0; i < 2 && candidate; ++i) {
      const auto& u = at_vertex[i];
      const double a = u[face[0]], b = u[face[1]], c = u[face[2]];
      const bool sign_change = std::min({a, b, c}) <= 0.0 && std::max({a, b, c}) >= 0.0;
      // |u| >= min_vertex |u| - L r on the triangle, so u_i has no zero
      // here unless the clearance below fails.
      const double clearance = lipschitz[i] * mesh->circumradius[f];
      candidate = sign_change || std::min({std::abs(a), std::abs(b), std::abs(c)}) <= clearance;
    }
    if (!candidate) continue;
    Eigen::Vector3d zero;
    double residual = 0.0;
    if (newton.solve(mesh->centroids[f], max_distance, zero, residual)) {
      converged.push_back(zero);
      out.max_residual = std::max(out.max_residual, residual);
    }
  }
  (void)nv;
  const auto limit = static_cast<std::size_t>(4 * sample.bezout_bound());
  out.degenerate = !dedup(std::move(converged), config.dedup_radius, limit, out.zeros);
  return out;
}

ZeroFindingResult degenerate_result(const SubspaceSample& sample, int depth, std::vector<int> counts) {
  ZeroFindingResult r;
  r.status = ZeroStatus::Degenerate;
  r.bezout_bound = sample.bezout_bound();
  r.depth = depth;
  r.counts_per_depth = std::move(counts);
  return r;
}

void validate_config(const SolverConfig& config) {
  if (config.depth < 0 || config.depth > kMaxIcosphereDepth - 2) {
    throw InvalidArgument("solver depth must be in [0, " + std::to_string(kMaxIcosphereDepth - 2) + "]");
  }
  if (!(config.newton_tolerance > 0.0)) throw InvalidArgument("Newton tolerance must be positive");
  if (config.max_iterations < 1) throw InvalidArgument("Newton iteration limit must be >= 1");
  if (!(config.dedup_radius > 0.0)) throw InvalidArgument("dedup radius must be positive");
}

}  // namespace

int default_depth(int max_degree) {
  const int log2m = static_cast<int>(std::ceil(std::log2(static_cast<double>(std::max(1, max_degree)))));
  return std::max(4, log2m + 3);
}

SubspaceSample::SubspaceSample(std::vector<HarmonicBasis> bases, std::vector<CoefficientVector> rows)
    : bases_(std::move(bases)), rows_(std::move(rows)) {
  if (bases_.empty() || bases_.size() != rows_.size()) {
    throw InvalidArgument("a subspace sample needs one basis per row and at least one row");
  }
  const int n = bases_.front().sphere_dim();
  if (static_cast<int>(rows_.size()) != n) {
    throw InvalidArgument("a sample on S^" + std::to_string(n) + " needs exactly " + std::to_string(n) + " rows");
  }
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (bases_[i].sphere_dim() != n) throw InvalidArgument("all rows must live on the same sphere");
    check_coefficients(bases_[i], rows_[i]);
  }
  // Stack the rows inside the direct sum of the distinct eigenspaces.
  std::map<int, Eigen::Index> offset;
  Eigen::Index total = 0;
  for (const auto& b : bases_) {
    if (offset.emplace(b.degree(), total).second) total += b.dimension();
  }
  Eigen::MatrixXd stacked = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows_.size()), total);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    stacked.row(static_cast<Eigen::Index>(i)).segment(offset[bases_[i].degree()], rows_[i].size()) =
        rows_[i].transpose();
  }
  if (!stacked.allFinite()) throw InvalidArgument("sample coefficients must be finite");
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(stacked).singularValues();
  if (!(sv.size() > 0 && sv[0] > 0.0 && sv[sv.size() - 1] > kRankTolerance * sv[0])) {
    throw RankDeficient("sample rows do not span an " + std::to_string(n) + "-dimensional subspace");
  }
}

std::vector<int> SubspaceSample::source_degrees() const {
  std::vector<int> out;
  for (const auto& b : bases_) out.push_back(b.degree());
  return out;
}

int SubspaceSample::max_degree() const {
  int m = 0;
  for (const auto& b : bases_) m = std::max(m, b.degree());
  return m;
}

std::int64_t SubspaceSample::bezout_bound() const {
  std::int64_t bound = 2;
  for (const auto& b : bases_) bound *= b.degree();
  return bound;
}

double SubspaceSample::max_abs_value(const Eigen::Vector3d& x) const {
  double worst = 0.0;
  for (std::size_t i = 0; i < rows_.size(); ++i) worst = std::max(worst, std::abs(bases_[i].value(rows_[i], x)));
  return worst;
}

double SubspaceSample::scale(int i) const {
  const auto k = static_cast<std::size_t>(i);
  return rows_[k].norm() * std::sqrt(bases_[k].gradient_sum());
}

std::string_view to_string(ZeroStatus status) {
  switch (status) {
    case ZeroStatus::Complete:
      return "Complete";
    case ZeroStatus::DepthEscalated:
      return "DepthEscalated";
    case ZeroStatus::Degenerate:
      return "Degenerate";
  }
  return "Unknown";
}

ZeroFindingResult find_common_zeros_s2(const SubspaceSample& sample, const SolverConfig& config) {
  validate_config(config);
  if (sample.sphere_dim() != 2) throw InvalidArgument("find_common_zeros_s2 needs a sample on S^2");
  const int depth = config.depth > 0 ? config.depth : default_depth(sample.max_degree());
  const auto limit = static_cast<std::size_t>(4 * sample.bezout_bound());

  std::vector<int> counts;
  std::vector<Eigen::Vector3d> all;
  double max_residual = 0.0;
  auto run = [&](int d) {
    DepthOutcome o = solve_at_depth(sample, config, d);
    counts.push_back(static_cast<int>(o.zeros.size()));
    max_residual = std::max(max_residual, o.max_residual);
    all.insert(all.end(), o.zeros.begin(), o.zeros.end());
    return o;
  };

  const DepthOutcome coarse = run(depth);
  if (coarse.degenerate) return degenerate_result(sample, depth, counts);
  const DepthOutcome fine = run(depth + 1);
  if (fine.degenerate) return degenerate_result(sample, depth + 1, counts);

  std::vector<Eigen::Vector3d> merged;
  bool ok = dedup(all, config.dedup_radius, limit, merged);
  ZeroStatus status = ZeroStatus::Complete;
  int used = depth + 1;
  if (!ok) return degenerate_result(sample, used, counts);
  if (coarse.zeros.size() != fine.zeros.size() || merged.size() != fine.zeros.size()) {
    // Counts disagree: one escalation, keep the union of verified zeros.
    status = ZeroStatus::DepthEscalated;
    used = std::min(depth + 2, kMaxIcosphereDepth);
    const DepthOutcome finer = run(used);
    if (finer.degenerate) return degenerate_result(sample, used, counts);
    ok = dedup(all, config.dedup_radius, limit, merged);
    if (!ok) return degenerate_result(sample, used, counts);
  }

  ZeroFindingResult result;
  result.status = status;
  result.bezout_bound = sample.bezout_bound();
  result.depth = used;
  result.counts_per_depth = std::move(counts);
  result.max_residual = max_residual;
  result.zeros.reserve(merged.size());
  for (const auto& p : merged) result.zeros.emplace_back(Eigen::Vector3d(p.normalized()));
  return result;
}

ZeroFindingResult find_common_zeros_s1(const SubspaceSample& sample) {
  if (sample.sphere_dim() != 1) throw InvalidArgument("find_common_zeros_s1 needs a sample on S^1");
  const HarmonicBasis& basis = sample.basis(0);
  const CoefficientVector& c = sample.row(0);
  const int m = basis.degree();
  // a cos(m t) + b sin(m t) = r cos(m t - phi) vanishes at m t - phi = pi/2 + k pi.
  const double phi = std::atan2(c[1], c[0]);
  std::vector<double> angles;
  for (int k = 0; k < 2 * m; ++k) {
    double t = std::remainder((phi + 0.5 * kPi + k * kPi) / m, 2.0 * kPi);
    if (t < 0) t += 2.0 * kPi;
    angles.push_back(t);
  }
  std::sort(angles.begin(), angles.end());

  ZeroFindingResult result;
  result.status = ZeroStatus::Complete;
  result.bezout_bound = sample.bezout_bound();
  result.counts_per_depth = {2 * m};
  for (double t : angles) {
    result.zeros.push_back(SpherePoint::on_circle(t));
    result.max_residual = std::max(result.max_residual, std::abs(basis.value(c, result.zeros.back().ambient())));
  }
  std::sort(result.zeros.begin(), result.zeros.end(),
            [](const SpherePoint& a, const SpherePoint& b) { return lex_less(a.ambient(), b.ambient()); });
  return result;
}

ZeroFindingResult find_common_zeros(const SubspaceSample& sample, const SolverConfig& config) {
  return sample.sphere_dim() == 1 ? find_common_zeros_s1(sample) : find_common_zeros_s2(sample, config);
}

bool verify_bezout(const ZeroFindingResult& result) {
  if (result.status == ZeroStatus::Degenerate) {
    throw DegenerateInput("the Bezout bound applies only to finite zero sets");
  }
  return static_cast<std::int64_t>(result.zeros.size()) <= result.bezout_bound;
}

CircleRestriction restrict_to_great_circle(const HarmonicBasis& basis, const CoefficientVector& coeffs,
                                           const Eigen::Vector3d& e1, const Eigen::Vector3d& e2,
                                           int samples_per_degree) {
  if (basis.sphere_dim() != 2) throw InvalidArgument("great-circle restriction needs an S^2 basis");
  check_coefficients(basis, coeffs);
  if (std::abs(e1.norm() - 1.0) > 1e-10 || std::abs(e2.norm() - 1.0) > 1e-10 || std::abs(e1.dot(e2)) > 1e-10) {
    throw InvalidArgument("great-circle frame must be orthonormal");
  }
  if (samples_per_degree < 16) throw InvalidArgument("need at least 16 samples per degree");

  const int count = samples_per_degree * basis.degree();
  const double dt = 2.0 * kPi / count;
  auto g = [&](double t) { return basis.value(coeffs, std::cos(t) * e1 + std::sin(t) * e2); };

  std::vector<double> samples(static_cast<std::size_t>(count));
  double peak = 0.0;
  for (int j = 0; j < count; ++j) {
    samples[static_cast<std::size_t>(j)] = g(j * dt);
    peak = std::max(peak, std::abs(samples[static_cast<std::size_t>(j)]));
  }
  const double magnitude = coeffs.norm() * std::sqrt(basis.squared_radius());
  if (peak <= 1e-12 * magnitude) {
    throw DegenerateInput("eigenfunction vanishes identically on the great circle");
  }

  CircleRestriction out;
  for (int j = 0; j < count; ++j) {
    const double a = samples[static_cast<std::size_t>(j)];
    const double b = samples[static_cast<std::size_t>((j + 1) % count)];
    if (a == 0.0) {
      out.roots.push_back(j * dt);
      continue;
    }
    if (a * b >= 0.0) continue;
    double lo = j * dt, hi = (j + 1) * dt, glo = a;
    for (int it = 0; it < 100 && hi - lo > 1e-15; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double gm = g(mid);
      if (gm == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((gm < 0.0) == (glo < 0.0)) {
        lo = mid;
        glo = gm;
      } else {
        hi = mid;
      }
    }
    out.roots.push_back(0.5 * (lo + hi));
  }
  return out;
}

}  // namespace nodal
