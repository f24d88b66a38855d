#include "nodal/integralgeom.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "nodal/errors.hpp"
#include "nodal/legendre.hpp"
#include "parallel.hpp"

namespace nodal {

namespace {

// Safety valve for the redraw loops; a healthy run redraws almost never.
constexpr int kMaxRedraws = 1000;

struct Moments {
  double mean = 0.0;
  double standard_error = 0.0;
};

Moments moments(const std::vector<double>& xs) {
  Moments out;
  const auto n = static_cast<double>(xs.size());
  if (xs.empty()) return out;
  out.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    out.standard_error = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  }
  return out;
}

struct TrialOutcome {
  int count = 0;
  int redraws = 0;
  bool escalated = false;
  bool bezout_ok = true;
  double max_residual = 0.0;
};

AverageReport run_average(const std::vector<HarmonicBasis>& bases, int trials, const SolverConfig& config,
                          std::uint64_t seed) {
  if (trials < 1) throw InvalidArgument("trials must be >= 1");
  if (bases.empty()) throw InvalidArgument("need at least one basis");
  const int n = bases.front().sphere_dim();
  if (static_cast<int>(bases.size()) != n) {
    throw InvalidArgument("S^" + std::to_string(n) + " needs " + std::to_string(n) + " eigenfunctions per sample");
  }

  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(trials));
  detail::parallel_for(trials, [&](int t) {
    auto rng = trial_stream(seed, static_cast<std::uint64_t>(t));
    TrialOutcome& o = outcomes[static_cast<std::size_t>(t)];
    for (;;) {
      const SubspaceSample sample = sample_subspace(bases, rng);
      const ZeroFindingResult r = find_common_zeros(sample, config);
      if (r.status == ZeroStatus::Degenerate) {
        if (++o.redraws > kMaxRedraws) throw DegenerateInput("too many degenerate samples in one trial");
        continue;
      }
      o.count = static_cast<int>(r.zeros.size());
      o.escalated = r.status == ZeroStatus::DepthEscalated;
      o.bezout_ok = verify_bezout(r);
      o.max_residual = r.max_residual;
      break;
    }
  });

  AverageReport report;
  report.sphere_dim = n;
  for (const auto& b : bases) report.degrees.push_back(b.degree());
  report.trials = trials;
  report.seed = seed;
  std::vector<double> counts;
  counts.reserve(outcomes.size());
  for (const auto& o : outcomes) {
    counts.push_back(o.count);
    ++report.histogram[o.count];
    report.degenerate_resamples += o.redraws;
    report.depth_escalations += o.escalated ? 1 : 0;
    report.bezout_violations += o.bezout_ok ? 0 : 1;
    report.max_residual = std::max(report.max_residual, o.max_residual);
  }
  const Moments mom = moments(counts);
  report.mean = mom.mean;
  report.standard_error = mom.standard_error;
  return report;
}

void finish(AverageReport& report, double theory) {
  report.theory = theory;
  report.relative_deviation = std::abs(report.mean - theory) / theory;
}

}  // namespace

double sphere_surface_area(int k) {
  if (k < 1) throw InvalidArgument("sphere dimension must be >= 1");
  const double h = 0.5 * (k + 1);
  return 2.0 * std::pow(kPi, h) / std::tgamma(h);
}

double expected_zero_count(int sphere_dim, int degree) {
  if (degree < 1) throw InvalidArgument("degree must be >= 1");
  const double n = sphere_dim;
  const double lambda = static_cast<double>(degree) * (degree + sphere_dim - 1);
  // vol M = sigma_n on the round sphere; cancel it so integer cases stay exact.
  return 2.0 * std::pow(lambda / n, 0.5 * n);
}

double conjectured_zero_count(int sphere_dim, const std::vector<int>& degrees) {
  if (static_cast<int>(degrees.size()) != sphere_dim) {
    throw InvalidArgument("need one degree per dimension");
  }
  double product = 1.0;
  for (int m : degrees) {
    if (m < 1) throw InvalidArgument("degrees must be >= 1");
    product *= static_cast<double>(m) * (m + sphere_dim - 1);
  }
  const double n = sphere_dim;
  return 2.0 * std::sqrt(product) / std::pow(n, 0.5 * n);
}

std::mt19937_64 trial_stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), 0x6e6f64u};
  return std::mt19937_64(seq);
}

SubspaceSample sample_subspace(const std::vector<HarmonicBasis>& bases, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  for (int attempt = 0;; ++attempt) {
    std::vector<CoefficientVector> rows;
    for (const auto& b : bases) {
      CoefficientVector c(b.dimension());
      for (Eigen::Index i = 0; i < c.size(); ++i) c[i] = gauss(rng);
      rows.push_back(std::move(c));
    }
    try {
      return SubspaceSample(bases, std::move(rows));
    } catch (const RankDeficient&) {
      if (attempt >= kMaxRedraws) throw;
    }
  }
}

AverageReport average_zero_count(const std::vector<HarmonicBasis>& bases, int trials, const SolverConfig& config,
                                 std::uint64_t seed) {
  for (const auto& b : bases) {
    if (!(b == bases.front())) throw InvalidArgument("average_zero_count needs a single common degree");
  }
  AverageReport report = run_average(bases, trials, config, seed);
  finish(report, expected_zero_count(bases.front().sphere_dim(), bases.front().degree()));
  return report;
}

AverageReport conjecture_mixed_average(const std::vector<HarmonicBasis>& bases, int trials,
                                       const SolverConfig& config, std::uint64_t seed) {
  if (bases.empty() || bases.front().sphere_dim() != 2) {
    throw InvalidArgument("the mixed-degree experiment runs on S^2 only");
  }
  AverageReport report = run_average(bases, trials, config, seed);
  std::vector<int> degrees;
  for (const auto& b : bases) degrees.push_back(b.degree());
  finish(report, conjectured_zero_count(2, degrees));
  report.experimental = true;
  return report;
}

std::pair<Eigen::Vector3d, Eigen::Vector3d> random_great_circle(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  for (;;) {
    Eigen::Vector3d a(gauss(rng), gauss(rng), gauss(rng));
    Eigen::Vector3d b(gauss(rng), gauss(rng), gauss(rng));
    if (a.norm() < 1e-12) continue;
    const Eigen::Vector3d e1 = a.normalized();
    b -= b.dot(e1) * e1;
    if (b.norm() < 1e-12) continue;
    return {e1, b.normalized()};
  }
}

namespace {

LengthReport crofton_run(int trials, std::uint64_t seed,
                         const std::function<int(std::mt19937_64&)>& count_one) {
  if (trials < 1) throw InvalidArgument("trials must be >= 1");
  std::vector<double> counts(static_cast<std::size_t>(trials));
  std::vector<int> redraws(static_cast<std::size_t>(trials), 0);
  detail::parallel_for(trials, [&](int t) {
    auto rng = trial_stream(seed, static_cast<std::uint64_t>(t));
    for (;;) {
      try {
        counts[static_cast<std::size_t>(t)] = count_one(rng);
        return;
      } catch (const DegenerateInput&) {
        if (++redraws[static_cast<std::size_t>(t)] > kMaxRedraws) throw;
      }
    }
  });
  LengthReport report;
  report.trials = trials;
  report.seed = seed;
  const Moments mom = moments(counts);
  report.mean_count = mom.mean;
  report.count_standard_error = mom.standard_error;
  report.length = kPi * mom.mean;
  report.standard_error = kPi * mom.standard_error;
  report.degenerate_resamples = std::accumulate(redraws.begin(), redraws.end(), 0);
  return report;
}

}  // namespace

LengthReport crofton_length(const HarmonicBasis& basis, const CoefficientVector& coeffs, int trials,
                            std::uint64_t seed, const Eigen::Matrix3d& rotation) {
  if (basis.sphere_dim() != 2) throw InvalidArgument("the Crofton estimator runs on S^2");
  check_coefficients(basis, coeffs);
  if (coeffs.norm() == 0.0) throw InvalidArgument("the zero function has no nodal length");
  return crofton_run(trials, seed, [&](std::mt19937_64& rng) {
    const auto [e1, e2] = random_great_circle(rng);
    // u(R^T x) on the circle (e1, e2) is u on the circle (R^T e1, R^T e2).
    return restrict_to_great_circle(basis, coeffs, rotation.transpose() * e1, rotation.transpose() * e2).count();
  });
}

LengthReport random_nodal_length(const HarmonicBasis& basis, int trials, std::uint64_t seed) {
  if (basis.sphere_dim() != 2) throw InvalidArgument("the Crofton estimator runs on S^2");
  return crofton_run(trials, seed, [&](std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    CoefficientVector c(basis.dimension());
    for (Eigen::Index i = 0; i < c.size(); ++i) c[i] = gauss(rng);
    const auto [e1, e2] = random_great_circle(rng);
    return restrict_to_great_circle(basis, c, e1, e2).count();
  });
}

double zonal_nodal_length(int degree) {
  double total = 0.0;
  for (double t : legendre_roots(degree)) total += 2.0 * kPi * std::sqrt(1.0 - t * t);
  return total;
}

double zonal_alpha_max(int degree) {
  std::vector<double> colatitudes{0.0};
  for (double t : legendre_roots(degree)) colatitudes.push_back(std::acos(t));
  colatitudes.push_back(kPi);
  std::sort(colatitudes.begin(), colatitudes.end());
  double gap = kPi;
  for (std::size_t i = 1; i < colatitudes.size(); ++i) gap = std::min(gap, colatitudes[i] - colatitudes[i - 1]);
  return gap / 4.0;
}

ZeroFindingResult zonal_pair_demo(int degree, double alpha, const SolverConfig& config) {
  const HarmonicBasis basis = build_basis(2, degree);
  const double alpha_max = zonal_alpha_max(degree);
  if (!(alpha >= 0.0 && alpha < alpha_max)) {
    throw InvalidArgument("alpha must lie in [0, " + std::to_string(alpha_max) + ") for degree " +
                          std::to_string(degree));
  }
  if (alpha == 0.0) {
    // Both functions are the same zonal harmonic; Z is its whole nodal set.
    ZeroFindingResult r;
    r.status = ZeroStatus::Degenerate;
    r.bezout_bound = 2LL * degree * degree;
    return r;
  }
  const SpherePoint pole(Eigen::Vector3d(0.0, 0.0, 1.0));
  const SpherePoint tilted(Eigen::Vector3d(std::sin(alpha), 0.0, std::cos(alpha)));
  const SubspaceSample sample({basis, basis}, {zonal(basis, pole), zonal(basis, tilted)});
  return find_common_zeros_s2(sample, config);
}

}  // namespace nodal
